from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from matplotlib.tri import LinearTriInterpolator

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from .field import Field


class FieldInterpolator:
    """
    Evaluate a P1 field at arbitrary points by linear interpolation in the containing
    triangle. Points that fall outside the triangulation (a chord cuts off part of a
    curved boundary) take the value of the nearest node.
    """

    def __init__(self, field: Field) -> None:
        self.field = field
        self._linear = LinearTriInterpolator(field.mesh.triangulation, field.values)

    def __call__(self, points: ArrayLike) -> NDArray[np.float64]:
        points = np.asarray(points, dtype=float)
        flat = points.reshape(-1, 2)
        values = np.ma.filled(self._linear(flat[:, 0], flat[:, 1]).astype(float), np.nan)
        missing = np.isnan(values)
        if missing.any():
            nearest = self.field.mesh.nearest_nodes(flat[missing])
            values[missing] = self.field.values[nearest]
        return values.reshape(points.shape[:-1])

    def inside(self, points: ArrayLike) -> NDArray[np.bool_]:
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        finder = self.field.mesh.triangulation.get_trifinder()
        return finder(points[:, 0], points[:, 1]) >= 0
