from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from nbubble.errors import InvalidParameterError

if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import ArrayLike, NDArray

    from nbubble.geometry import Mesh


@dataclass(frozen=True, eq=False)
class Field:
    """A continuous piecewise-linear function given by its nodal values."""

    mesh: Mesh
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.mesh.n_nodes,):
            raise InvalidParameterError(
                f"Field has {values.size} values for a mesh of {self.mesh.n_nodes} nodes.",
            )
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise InvalidParameterError(f"Field value at node {bad} is not finite.")
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, mesh: Mesh, value: float) -> Field:
        return cls(mesh, np.full(mesh.n_nodes, float(value)))

    @classmethod
    def from_function(
        cls,
        mesh: Mesh,
        fn: Callable[[NDArray[np.float64]], ArrayLike],
    ) -> Field:
        """Nodal interpolant of fn, called once with the (n, 2) node array."""
        return cls(mesh, np.asarray(fn(mesh.nodes), dtype=float))

    def with_values(self, values: ArrayLike) -> Field:
        return Field(self.mesh, np.asarray(values, dtype=float))

    def scaled(self, t: float) -> Field:
        return Field(self.mesh, t * self.values)

    @property
    def max(self) -> float:
        return float(self.values.max())

    @property
    def min(self) -> float:
        return float(self.values.min())

    @property
    def peak_node(self) -> int:
        # argmax returns the first index, the smallest among ties
        return int(np.argmax(self.values))

    @property
    def peak(self) -> NDArray[np.float64]:
        return self.mesh.nodes[self.peak_node]

    def is_constant(self, rtol: float = 1e-6) -> bool:
        spread = self.max - self.min
        return spread <= rtol * max(abs(self.max), abs(self.min), np.finfo(float).tiny)
