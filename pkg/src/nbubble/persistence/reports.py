from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np

from nbubble.errors import FormatError
from nbubble.utils import jsonable

from .formats import fmt

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from numpy.typing import NDArray

    from nbubble.asymptotics import SweepResult
    from nbubble.moser import SharpnessTable

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = (
    "d",
    "m_d",
    "M_test",
    "t0",
    "dist_over_sqrtd",
    "profile_sup_err",
    "mu1",
    "budget",
    "refl_residual",
    "angular_min",
    "vertical_min",
    "maxima_count",
)
MOSER_COLUMNS = ("alpha", "eps", "value", "classification")


def dumps_json(payload: Any) -> str:
    """Stable, flat-friendly JSON text; NaN and infinities become null."""
    return json.dumps(jsonable(payload), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_json(path: Path | str, payload: Any) -> Path:
    path = Path(path)
    path.write_text(dumps_json(payload), encoding="utf-8")
    return path


def read_json(path: Path | str, kind: str = "json") -> dict[str, Any]:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as ex:
        raise FormatError(kind, ex.lineno, ex.msg) from ex
    if not isinstance(payload, dict):
        raise FormatError(kind, 1, "expected a JSON object")
    return payload


def _cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool | int | np.integer):
        return str(int(value))
    return fmt(value)


def _write_csv(
    path: Path | str,
    columns: Sequence[str],
    rows: Sequence[Mapping[str, Any]],
) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(row[key]) for key in columns})
    return path


def write_sweep_csv(path: Path | str, result: SweepResult) -> Path:
    return _write_csv(path, SWEEP_COLUMNS, [entry.to_row() for entry in result.entries])


def write_moser_csv(path: Path | str, table: SharpnessTable) -> Path:
    return _write_csv(path, MOSER_COLUMNS, table.rows())


@dataclass(frozen=True, eq=False)
class SweepTable:
    """Columns of a sweep CSV as read back from disk."""

    columns: dict[str, NDArray[np.float64]]

    def __getitem__(self, name: str) -> NDArray[np.float64]:
        return self.columns[name]

    def __len__(self) -> int:
        return len(self.columns["d"])


def read_sweep_csv(path: Path | str) -> SweepTable:
    with Path(path).open(encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or tuple(header) != SWEEP_COLUMNS:
            raise FormatError("sweep", 1, f"header must be {','.join(SWEEP_COLUMNS)}")
        rows: list[list[float]] = []
        for line, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(SWEEP_COLUMNS):
                raise FormatError("sweep", line, f"expected {len(SWEEP_COLUMNS)} columns")
            try:
                rows.append([float(value) for value in record])
            except ValueError as ex:
                raise FormatError("sweep", line, str(ex)) from ex
    if not rows:
        raise FormatError("sweep", 2, "no rows")
    data = np.array(rows)
    return SweepTable(columns={name: data[:, i] for i, name in enumerate(SWEEP_COLUMNS)})
