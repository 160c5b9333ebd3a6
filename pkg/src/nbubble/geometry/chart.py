from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from nbubble.errors import ChartRadiusError, InvalidParameterError, OutOfChartError
from nbubble.settings import settings

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from .domain import Domain

logger = logging.getLogger(__name__)

GRAPH_SAMPLES = 801
NEWTON_STEPS = 30
NEWTON_TOL = 1e-15


class _BoundaryGraph:
    """The boundary near P written as z2 = phi(z1) in the chart frame."""

    def phi(self, z1: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.zeros_like(z1)

    def dphi(self, z1: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.zeros_like(z1)

    def d2phi(self, z1: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.zeros_like(z1)


class _CurveGraph(_BoundaryGraph):
    def __init__(
        self,
        domain: Domain,
        s0: float,
        origin: NDArray[np.float64],
        frame: NDArray[np.float64],
        radius: float,
    ) -> None:
        self.domain = domain
        self.s0 = s0
        self.origin = origin
        self.frame = frame
        self.radius = radius

        # walk the arc on both sides until it leaves the strip |z1| <= radius
        span = min(0.5 * domain.perimeter, 4.0 * radius)
        s = s0 + np.linspace(-span, span, GRAPH_SAMPLES)
        local = self._local(s)
        slope = self.domain.tangent(s) @ self.frame[0]
        center = GRAPH_SAMPLES // 2
        left = np.flatnonzero(local[:center, 0] <= -radius)
        right = center + np.flatnonzero(local[center:, 0] >= radius)
        if left.size == 0 or right.size == 0:
            raise ChartRadiusError(radius)
        lo, hi = left[-1], right[0]
        if np.any(slope[lo : hi + 1] <= 0):
            raise ChartRadiusError(radius)
        self.s_table = s[lo : hi + 1]
        self.z1_table = local[lo : hi + 1, 0]

    def _local(self, s: NDArray[np.float64]) -> NDArray[np.float64]:
        return (self.domain.point(s) - self.origin) @ self.frame.T

    def _arclength(self, z1: NDArray[np.float64]) -> NDArray[np.float64]:
        z1 = np.clip(z1, self.z1_table[0], self.z1_table[-1])
        s = np.interp(z1, self.z1_table, self.s_table)
        for _ in range(4):
            residual = self._local(s)[..., 0] - z1
            s = s - residual / (self.domain.tangent(s) @ self.frame[0])
        return s

    def phi(self, z1: NDArray[np.float64]) -> NDArray[np.float64]:
        return self._local(self._arclength(z1))[..., 1]

    def dphi(self, z1: NDArray[np.float64]) -> NDArray[np.float64]:
        tangent = self.domain.tangent(self._arclength(z1)) @ self.frame.T
        return tangent[..., 1] / tangent[..., 0]

    def d2phi(self, z1: NDArray[np.float64]) -> NDArray[np.float64]:
        s = self._arclength(z1)
        tangent = self.domain.tangent(s) @ self.frame.T
        slope = tangent[..., 1] / tangent[..., 0]
        return self.domain.curvature(s) * (1.0 + slope**2) ** 1.5


@dataclass(frozen=True, eq=False)
class StraighteningChart:
    """
    Local coordinates z in which the boundary near P becomes the line z2 = 0.

    The frame rows are the unit tangent and the inner normal at P, so that
    x = P + frame.T @ (z1 - z2 phi'(z1), z2 + phi(z1)).
    """

    P: NDArray[np.float64]
    frame: NDArray[np.float64]
    radius: float
    phi2_at_0: float
    _graph: _BoundaryGraph = field(repr=False)

    @classmethod
    def flat(cls, radius: float = 10.0, P: ArrayLike = (0.0, 0.0)) -> StraighteningChart:
        """Chart of a straight boundary, phi identically zero."""
        return cls(
            P=np.asarray(P, dtype=float),
            frame=np.eye(2),
            radius=radius,
            phi2_at_0=0.0,
            _graph=_BoundaryGraph(),
        )

    @property
    def tangent(self) -> NDArray[np.float64]:
        return self.frame[0]

    @property
    def inner_normal(self) -> NDArray[np.float64]:
        return self.frame[1]

    def phi(self, z1: ArrayLike) -> NDArray[np.float64]:
        return self._graph.phi(np.asarray(z1, dtype=float))

    def dphi(self, z1: ArrayLike) -> NDArray[np.float64]:
        return self._graph.dphi(np.asarray(z1, dtype=float))

    def d2phi(self, z1: ArrayLike) -> NDArray[np.float64]:
        return self._graph.d2phi(np.asarray(z1, dtype=float))

    def local_map(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        """Straightening map in frame coordinates, without the radius check."""
        z1, z2 = z[..., 0], z[..., 1]
        return np.stack([z1 - z2 * self.dphi(z1), z2 + self.phi(z1)], axis=-1)

    def local_jacobian(self, z: NDArray[np.float64]) -> NDArray[np.float64]:
        z1, z2 = z[..., 0], z[..., 1]
        slope = self.dphi(z1)
        jac = np.empty((*z.shape[:-1], 2, 2))
        jac[..., 0, 0] = 1.0 - z2 * self.d2phi(z1)
        jac[..., 0, 1] = -slope
        jac[..., 1, 0] = slope
        jac[..., 1, 1] = 1.0
        return jac

    def to_local(self, x: ArrayLike) -> NDArray[np.float64]:
        return (np.asarray(x, dtype=float) - self.P) @ self.frame.T

    def from_local(self, xi: NDArray[np.float64]) -> NDArray[np.float64]:
        return self.P + xi @ self.frame

    def invert_local(self, xi: NDArray[np.float64]) -> NDArray[np.float64]:
        """Newton solve of local_map(z) = xi; NaN where the iteration leaves the chart."""
        z = np.stack([xi[..., 0], xi[..., 1] - self.phi(xi[..., 0])], axis=-1)
        for _ in range(NEWTON_STEPS):
            residual = self.local_map(z) - xi
            if np.all(np.abs(residual) <= NEWTON_TOL * (1.0 + np.abs(xi))):
                break
            z = z - np.linalg.solve(self.local_jacobian(z), residual[..., None])[..., 0]
            z[..., 0] = np.clip(z[..., 0], -self.radius, self.radius)
        converged = np.all(np.abs(self.local_map(z) - xi) <= 1e-12 * (1.0 + np.abs(xi)), axis=-1)
        z[~converged] = np.nan
        return z


def boundary_chart(
    domain: Domain,
    P: ArrayLike,
    chart_radius: float | None = None,
) -> StraighteningChart:
    P = np.asarray(P, dtype=float)
    if not domain.on_boundary(P):
        raise InvalidParameterError(f"Point {P.tolist()} does not lie on the boundary.")
    s0 = float(domain.boundary_parameter(P))
    if chart_radius is None:
        chart_radius = settings.CHART_RADIUS_FRACTION * domain.radius_of_curvature(s0)
    if chart_radius <= 0:
        raise InvalidParameterError(f"Chart radius must be positive, got {chart_radius}.")

    origin = domain.point(s0)
    frame = np.stack([domain.tangent(s0), domain.inner_normal(s0)])
    graph = _CurveGraph(domain, s0, origin, frame, chart_radius)
    chart = StraighteningChart(
        P=origin,
        frame=frame,
        radius=chart_radius,
        phi2_at_0=float(domain.curvature(s0)),
        _graph=graph,
    )
    logger.debug(
        "chart at (%.6f, %.6f) radius %.4g curvature %.6g",
        origin[0],
        origin[1],
        chart_radius,
        chart.phi2_at_0,
    )
    return chart


def _check_radius(norm: NDArray[np.float64], radius: float) -> None:
    if np.isnan(norm).any():
        raise OutOfChartError(float("inf"), radius)
    worst = float(np.max(norm)) if norm.size else 0.0
    if worst > radius * (1 + 1e-12):
        raise OutOfChartError(worst, radius)


def chart_forward(chart: StraighteningChart, z: ArrayLike) -> NDArray[np.float64]:
    z = np.asarray(z, dtype=float)
    _check_radius(np.linalg.norm(z, axis=-1), chart.radius)
    return chart.from_local(chart.local_map(z))


def chart_inverse(chart: StraighteningChart, x: ArrayLike) -> NDArray[np.float64]:
    z = chart.invert_local(chart.to_local(x))
    _check_radius(np.linalg.norm(z, axis=-1), chart.radius)
    return z


def jacobian_expansion_residual(chart: StraighteningChart, z: ArrayLike) -> float:
    """|det DPhi(z) - (1 - phi''(0) z2)| / |z|^2 with a central-difference Jacobian."""
    z = np.asarray(z, dtype=float)
    norm = float(np.linalg.norm(z))
    if norm == 0.0:
        return 0.0
    if norm > chart.radius * (1 + 1e-12):
        raise OutOfChartError(norm, chart.radius)
    h = settings.JACOBIAN_STEP_FRACTION * chart.radius
    columns = [
        (chart.local_map(z + h * e) - chart.local_map(z - h * e)) / (2 * h) for e in np.eye(2)
    ]
    det = float(np.linalg.det(np.stack(columns, axis=-1)))
    return abs(det - (1.0 - chart.phi2_at_0 * z[1])) / norm**2


def cutoff_xi(rho: float, t: ArrayLike) -> NDArray[np.float64]:
    """1 on [0, rho], 2 - t/rho on (rho, 2 rho], 0 beyond."""
    if rho <= 0:
        raise InvalidParameterError(f"Cutoff radius must be positive, got {rho}.")
    return np.clip(2.0 - np.asarray(t, dtype=float) / rho, 0.0, 1.0)
