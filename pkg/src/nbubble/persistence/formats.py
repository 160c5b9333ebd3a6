"""
Whitespace-delimited ASCII formats for meshes, nodal fields and radial profiles.

Floats are written with 17 significant digits so that reading a written file gives
back the same doubles. Every parse failure raises FormatError with the 1-based line.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from nbubble.errors import FormatError, InvalidParameterError
from nbubble.fem import Field
from nbubble.geometry import Mesh, signed_areas
from nbubble.radial import RadialProfile

if TYPE_CHECKING:
    from collections.abc import Iterator

    from numpy.typing import NDArray

    from nbubble.geometry import Domain

logger = logging.getLogger(__name__)

MESH_SUFFIX = ".mesh"
FIELD_SUFFIX = ".field"
PROFILE_SUFFIX = ".profile"
PROFILE_HEADER = "# amplitude theta r_max"
SAMPLE_NAMES = ("r", "w", "dw")


def fmt(value: float) -> str:
    return format(float(value), ".17g")


class _Reader:
    """Line cursor over a text file that knows how to complain."""

    __slots__ = ("kind", "_lines", "line")

    def __init__(self, kind: str, path: Path) -> None:
        self.kind = kind
        self._lines = path.read_text(encoding="utf-8").splitlines()
        self.line = 0

    def error(self, message: str, line: int | None = None) -> FormatError:
        return FormatError(self.kind, self.line if line is None else line, message)

    def next(self) -> str:
        if self.line >= len(self._lines):
            self.line += 1
            raise self.error("unexpected end of file")
        text = self._lines[self.line]
        self.line += 1
        return text

    def tokens(self, count: int) -> list[str]:
        parts = self.next().split()
        if len(parts) != count:
            raise self.error(f"expected {count} values, found {len(parts)}")
        return parts

    def integer(self, token: str, name: str) -> int:
        try:
            return int(token)
        except ValueError:
            raise self.error(f"{name} {token!r} is not an integer") from None

    def number(self, token: str, name: str, *, allow_nan: bool = False) -> float:
        try:
            value = float(token)
        except ValueError:
            raise self.error(f"{name} {token!r} is not a number") from None
        if math.isinf(value) or (math.isnan(value) and not allow_nan):
            raise self.error(f"{name} is not finite")
        return value

    def rest(self) -> Iterator[tuple[int, str]]:
        while self.line < len(self._lines):
            text = self._lines[self.line]
            self.line += 1
            yield self.line, text

    def finish(self) -> None:
        for line, text in self.rest():
            if text.strip():
                raise self.error("unexpected content after the last record", line)


def write_mesh(path: Path | str, mesh: Mesh) -> Path:
    path = Path(path)
    flags = mesh.boundary_mask.astype(int)
    lines = [f"{mesh.n_nodes} {mesh.n_triangles}"]
    lines.extend(
        f"{fmt(x)} {fmt(y)} {flag}" for (x, y), flag in zip(mesh.nodes, flags, strict=True)
    )
    lines.extend(f"{i} {j} {k}" for i, j, k in mesh.triangles)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.debug("wrote %s with %d nodes", path, mesh.n_nodes)
    return path


def read_mesh(path: Path | str, domain: Domain | None = None) -> Mesh:
    reader = _Reader("mesh", Path(path))
    first, second = reader.tokens(2)
    n_nodes = reader.integer(first, "node count")
    n_triangles = reader.integer(second, "triangle count")
    if n_nodes < 3 or n_triangles < 1:
        raise reader.error("a mesh needs at least 3 nodes and 1 triangle")

    nodes = np.empty((n_nodes, 2))
    flags = np.empty(n_nodes, dtype=bool)
    for i in range(n_nodes):
        x, y, flag = reader.tokens(3)
        nodes[i] = reader.number(x, "x"), reader.number(y, "y")
        if flag not in {"0", "1"}:
            raise reader.error(f"boundary flag must be 0 or 1, got {flag!r}")
        flags[i] = flag == "1"

    triangles = np.empty((n_triangles, 3), dtype=np.int64)
    first_triangle_line = reader.line + 1
    for t in range(n_triangles):
        corners = [reader.integer(token, "node index") for token in reader.tokens(3)]
        for index in corners:
            if not 0 <= index < n_nodes:
                raise reader.error(f"node index {index} outside [0, {n_nodes})")
        if len(set(corners)) != 3:
            raise reader.error("triangle repeats a node")
        triangles[t] = corners
    reader.finish()

    areas = signed_areas(nodes, triangles)
    if np.any(areas <= 0.0):
        bad = int(np.flatnonzero(areas <= 0.0)[0])
        raise reader.error("triangle has nonpositive signed area", first_triangle_line + bad)
    return Mesh.from_arrays(nodes, triangles, np.flatnonzero(flags), domain=domain)


def write_field(path: Path | str, field: Field) -> Path:
    path = Path(path)
    lines = [str(field.mesh.n_nodes), *(fmt(value) for value in field.values)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_field(path: Path | str, mesh: Mesh) -> Field:
    reader = _Reader("field", Path(path))
    (token,) = reader.tokens(1)
    count = reader.integer(token, "node count")
    if count != mesh.n_nodes:
        raise reader.error(f"field has {count} nodes, the mesh has {mesh.n_nodes}")
    values = np.empty(count)
    for i in range(count):
        (token,) = reader.tokens(1)
        values[i] = reader.number(token, "value")
    reader.finish()
    return Field(mesh, values)


def solution_paths(stem: Path | str) -> tuple[Path, Path]:
    """`<stem>.mesh` and `<stem>.field`, paired by name."""
    stem = Path(stem)
    return stem.with_suffix(MESH_SUFFIX), stem.with_suffix(FIELD_SUFFIX)


def write_solution(stem: Path | str, field: Field) -> tuple[Path, Path]:
    mesh_path, field_path = solution_paths(stem)
    return write_mesh(mesh_path, field.mesh), write_field(field_path, field)


def read_solution(stem: Path | str, domain: Domain | None = None) -> Field:
    mesh_path, field_path = solution_paths(stem)
    return read_field(field_path, read_mesh(mesh_path, domain))


def write_profile(path: Path | str, profile: RadialProfile) -> Path:
    path = Path(path)
    lines = [
        PROFILE_HEADER,
        f"# {fmt(profile.amplitude)} {fmt(profile.theta)} {fmt(profile.r_max)}",
    ]
    lines.extend(
        f"{fmt(r)} {fmt(w)} {fmt(dw)}"
        for r, w, dw in zip(profile.r, profile.w, profile.dw, strict=True)
    )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _samples(reader: _Reader) -> NDArray[np.float64]:
    rows = []
    for _, text in reader.rest():
        if not text.strip():
            continue
        parts = text.split()
        if len(parts) != 3:
            raise reader.error(f"expected 3 values, found {len(parts)}")
        named = zip(parts, SAMPLE_NAMES, strict=True)
        rows.append([reader.number(token, name) for token, name in named])
    if len(rows) < 2:
        raise reader.error("a profile needs at least two samples")
    return np.array(rows)


def read_profile(path: Path | str) -> RadialProfile:
    reader = _Reader("profile", Path(path))
    if reader.next().split() != PROFILE_HEADER.split():
        raise reader.error(f"header must read {PROFILE_HEADER!r}")
    marker, *values = reader.tokens(4)
    if marker != "#":
        raise reader.error("second line must start with '#'")
    amplitude = reader.number(values[0], "amplitude")
    theta = reader.number(values[1], "theta", allow_nan=True)
    r_max = reader.number(values[2], "r_max")

    samples = _samples(reader)
    if samples[-1, 0] != r_max:
        raise reader.error(f"last radius {samples[-1, 0]:.17g} does not match r_max", 2)
    try:
        return RadialProfile.from_samples(
            samples[:, 0],
            samples[:, 1],
            samples[:, 2],
            amplitude=amplitude,
            theta=theta,
        )
    except InvalidParameterError as ex:
        raise reader.error(str(ex), 3) from ex
