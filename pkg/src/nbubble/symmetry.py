"""Diagnostics for the axial symmetry and monotonicity of ground states on a disk."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, TypedDict

import numpy as np

from .errors import DegenerateAxisError, InvalidParameterError
from .fem import FieldInterpolator, recovered_gradient
from .ground_state import count_local_maxima

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from .fem import Field
    from .ground_state import SolveReport

logger = logging.getLogger(__name__)

NONCONSTANT_RTOL = 1e-6
AXIS_TOL = 1e-12
ANGULAR_MARGIN = 3.0  # in units of h_max
POLE_BAND = 2.0  # in units of h_max


def _rotation(angle: float) -> NDArray[np.float64]:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def axis_angle(peak: ArrayLike) -> float:
    """Direction of the ray from the origin through the peak."""
    peak = np.asarray(peak, dtype=float)
    return float(np.arctan2(peak[1], peak[0]))


def align_axis(u: Field, peak: ArrayLike | None = None) -> Field:
    """
    The field rotated about the origin so that its peak sits on the positive second
    axis, re-interpolated onto the same mesh.
    """
    peak = u.peak if peak is None else np.asarray(peak, dtype=float)
    if u.is_constant(NONCONSTANT_RTOL):
        raise DegenerateAxisError("Field is constant; there is no peak to align.")
    scale = float(np.max(np.linalg.norm(u.mesh.nodes, axis=1)))
    if np.linalg.norm(peak) <= AXIS_TOL * scale:
        raise DegenerateAxisError()

    turn = 0.5 * np.pi - axis_angle(peak)
    if abs(turn) <= AXIS_TOL:
        return u
    # rotated(x) = u(R^{-1} x), R the rotation by turn
    source = u.mesh.nodes @ _rotation(turn)
    return u.with_values(FieldInterpolator(u)(source))


def reflection_residual(u: Field) -> float:
    """sup |u(x1, x2) - u(-x1, x2)| / max u over the nodes."""
    mirrored = u.mesh.nodes * np.array([-1.0, 1.0])
    reflected = FieldInterpolator(u)(mirrored)
    return float(np.max(np.abs(u.values - reflected)) / u.max)


@dataclass(frozen=True)
class NodalMinimum:
    value: float
    location: NDArray[np.float64]


def _minimum(u: Field, values: NDArray[np.float64], mask: NDArray[np.bool_]) -> NodalMinimum:
    if not mask.any():
        return NodalMinimum(value=float("nan"), location=np.full(2, np.nan))
    nodes = np.flatnonzero(mask)
    best = nodes[int(np.argmin(values[nodes]))]
    return NodalMinimum(value=float(values[best]), location=u.mesh.nodes[best].copy())


def angular_monotonicity(u: Field, margin: float | None = None) -> NodalMinimum:
    """min of x1 d2u - x2 d1u over nodes with x1 > margin."""
    h = u.mesh.h_max
    margin = ANGULAR_MARGIN * h if margin is None else margin
    if margin <= 2.0 * h:
        raise InvalidParameterError(f"Margin {margin:g} must exceed twice h_max = {2 * h:g}.")
    x = u.mesh.nodes
    grad = recovered_gradient(u)
    expression = x[:, 0] * grad[:, 1] - x[:, 1] * grad[:, 0]
    return _minimum(u, expression, x[:, 0] > margin)


def vertical_monotonicity(u: Field) -> NodalMinimum:
    """min of d2u over the lower half, away from the bottom pole."""
    x = u.mesh.nodes
    radius = float(np.max(np.linalg.norm(x, axis=1)))
    pole = np.array([0.0, -radius])
    band = POLE_BAND * u.mesh.h_max
    mask = (x[:, 1] < 0.0) & (np.linalg.norm(x - pole, axis=1) >= band)
    return _minimum(u, recovered_gradient(u)[:, 1], mask)


class SymmetryDict(TypedDict):
    refl_residual: float
    angular_min: float
    vertical_min: float
    maxima_count: int


@dataclass(frozen=True)
class SymmetryReport:
    d: float
    axis_angle: float
    reflection_residual: float
    angular_min: float
    vertical_min: float
    maxima_count: int
    max_gradient: float

    @property
    def tolerance(self) -> float:
        """Signed slack allowed on the monotonicity minima."""
        return -1e-3 * self.max_gradient

    @property
    def monotone(self) -> bool:
        return self.angular_min >= self.tolerance and self.vertical_min >= self.tolerance

    def to_dict(self) -> SymmetryDict:
        return {
            "refl_residual": self.reflection_residual,
            "angular_min": self.angular_min,
            "vertical_min": self.vertical_min,
            "maxima_count": self.maxima_count,
        }


def analyze_symmetry(report: SolveReport) -> SymmetryReport:
    aligned = align_axis(report.u, report.peak)
    gradient = recovered_gradient(aligned)
    angular = angular_monotonicity(aligned)
    vertical = vertical_monotonicity(aligned)
    result = SymmetryReport(
        d=report.d,
        axis_angle=axis_angle(report.peak),
        reflection_residual=reflection_residual(aligned),
        angular_min=angular.value,
        vertical_min=vertical.value,
        maxima_count=count_local_maxima(report.u).count,
        max_gradient=float(np.max(np.linalg.norm(gradient, axis=1))),
    )
    logger.debug(
        "symmetry at d=%g: reflection %.3g, angular min %.3g at %s, vertical min %.3g",
        report.d,
        result.reflection_residual,
        angular.value,
        np.round(angular.location, 4).tolist(),
        vertical.value,
    )
    return result
