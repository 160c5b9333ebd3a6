from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from nbubble.errors import InvalidParameterError, ResolutionError
from nbubble.fem import Field
from nbubble.geometry import boundary_chart, cutoff_xi
from nbubble.settings import settings

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from nbubble.geometry import Domain, Mesh, StraighteningChart
    from nbubble.radial import RadialProfile

logger = logging.getLogger(__name__)

RESOLUTION_DIVISOR = 4.0  # h near P must resolve sqrt(d) / 4
RESOLUTION_WINDOW = 3.0  # local h is measured within this many sqrt(d) of P
IMAGE_REACH = 2.0  # Phi(B+_r) lies within this many r of P


@dataclass(frozen=True, eq=False)
class TestFunctionSpec:
    """
    The profile transplanted to a boundary point: w(|Psi(x)| / sqrt(d)) times the
    cutoff xi_k(|Psi(x)|), zero outside Phi(B+_{2k}).
    """

    __test__ = False

    chart: StraighteningChart
    profile: RadialProfile
    d: float
    k: float = field(default=float("nan"))

    def __post_init__(self) -> None:
        if not self.d > 0:
            raise InvalidParameterError(f"Diffusion d must be positive, got {self.d}.")
        if np.isnan(self.k):
            object.__setattr__(self, "k", settings.K_FRACTION * self.chart.radius)
        if not self.k > 0:
            raise InvalidParameterError(f"Cutoff half-width k must be positive, got {self.k}.")
        if 2.0 * self.k > self.chart.radius * (1 + 1e-12):
            raise InvalidParameterError(
                f"Support radius 2k = {2 * self.k:g} exceeds the chart radius "
                f"{self.chart.radius:g}.",
            )

    @property
    def sqrt_d(self) -> float:
        return float(np.sqrt(self.d))

    def radial(self, r: ArrayLike) -> NDArray[np.float64]:
        """w_* as a function of the chart radius |z|, in unscaled units."""
        r = np.asarray(r, dtype=float)
        return cutoff_xi(self.k, r) * self.profile(r / self.sqrt_d)

    def radial_derivative(self, r: ArrayLike) -> NDArray[np.float64]:
        """d/d|z| of w_*, again in unscaled units."""
        r = np.asarray(r, dtype=float)
        ramp = (r > self.k) & (r < 2.0 * self.k)
        scaled = r / self.sqrt_d
        inner = cutoff_xi(self.k, r) * self.profile.derivative(scaled) / self.sqrt_d
        return inner - np.where(ramp, self.profile(scaled) / self.k, 0.0)

    def evaluate(self, points: ArrayLike) -> NDArray[np.float64]:
        """Direct evaluation at arbitrary points of the domain."""
        points = np.asarray(points, dtype=float)
        flat = points.reshape(-1, 2)
        values = np.zeros(len(flat))
        xi = self.chart.to_local(flat)
        # the image of the support bends away from P by more than its chart radius
        near = np.flatnonzero(np.linalg.norm(xi, axis=1) <= IMAGE_REACH * self.chart.radius)
        if near.size:
            z = self.chart.invert_local(xi[near])
            r = np.linalg.norm(z, axis=1)
            support = np.isfinite(r) & (r < 2.0 * self.k)
            values[near[support]] = self.radial(r[support])
        return values.reshape(points.shape[:-1])


def bump_chart(domain: Domain, s: float | None = None) -> StraighteningChart:
    """Chart at the boundary point of arclength s (default: largest curvature)."""
    s = domain.max_curvature_parameter if s is None else s
    radius = settings.TEST_CHART_RADIUS_FRACTION * domain.radius_of_curvature(s)
    return boundary_chart(domain, domain.point(s), radius)


def check_resolution(spec: TestFunctionSpec, mesh: Mesh) -> float:
    required = spec.sqrt_d / RESOLUTION_DIVISOR
    h_local = mesh.local_h(spec.chart.P, RESOLUTION_WINDOW * spec.sqrt_d)
    if h_local > required * (1 + 1e-9):
        raise ResolutionError(h_local, required)
    return h_local


def build_test_function(
    spec: TestFunctionSpec,
    mesh: Mesh,
    *,
    resolved: bool = True,
) -> Field:
    """
    Nodal interpolant of the transplanted profile. With resolved=False the mesh size
    near P is not checked, which is enough for a descent starting guess.
    """
    if resolved:
        check_resolution(spec, mesh)
    phi = Field(mesh, spec.evaluate(mesh.nodes))
    logger.debug(
        "test function at d=%g: %d supported nodes, peak %.6f",
        spec.d,
        int(np.count_nonzero(phi.values)),
        phi.max,
    )
    return phi
