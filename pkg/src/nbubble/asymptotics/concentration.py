from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from nbubble.errors import InvalidParameterError
from nbubble.fem import FieldInterpolator, quadratic_part
from nbubble.geometry import boundary_chart, chart_forward
from nbubble.settings import settings

if TYPE_CHECKING:
    from nbubble.geometry import Domain, StraighteningChart
    from nbubble.ground_state import SolveReport
    from nbubble.radial import RadialProfile

logger = logging.getLogger(__name__)

PATCH_RADII = 41
PATCH_ANGLES = 37
MIN_TAIL_POINTS = 10


@dataclass(frozen=True)
class ConcentrationMetrics:
    d: float
    dist_over_sqrtd: float
    profile_sup_err: float
    mu1: float  # NaN when the tail holds too few nodes
    patch_radius: float


def _domain(report: SolveReport) -> Domain:
    domain = report.u.mesh.domain
    if domain is None:
        raise InvalidParameterError("Concentration metrics need a mesh with a domain.")
    return domain


def concentration_chart(report: SolveReport) -> StraighteningChart:
    """Chart at the boundary point closest to the peak."""
    domain = _domain(report)
    s = float(domain.boundary_parameter(report.peak))
    radius = settings.CONCENTRATION_CHART_FRACTION * domain.radius_of_curvature(s)
    return boundary_chart(domain, domain.point(s), radius)


def concentration_report(
    report: SolveReport,
    profile: RadialProfile,
    chart: StraighteningChart | None = None,
    patch_radius: float | None = None,
) -> ConcentrationMetrics:
    """
    How closely u_d looks like a rescaled half-spike at its peak: the peak's distance
    to the boundary in units of sqrt(d), the sup error against w(|z|) on the rescaled
    half-disk, and the exponential rate of the tail outside that half-disk.
    """
    chart = concentration_chart(report) if chart is None else chart
    sqrt_d = float(np.sqrt(report.d))
    radius = settings.PATCH_RADIUS if patch_radius is None else patch_radius
    radius = min(radius, chart.radius / sqrt_d)

    r = np.linspace(0.0, radius, PATCH_RADII)
    theta = np.linspace(0.0, np.pi, PATCH_ANGLES)
    R, TH = np.meshgrid(r, theta, indexing="ij")
    z = np.stack([R * np.cos(TH), R * np.sin(TH)], axis=-1)
    values = FieldInterpolator(report.u)(chart_forward(chart, sqrt_d * z))
    sup_err = float(np.max(np.abs(values - profile(R))))

    mesh = report.u.mesh
    far = 0.5 * _domain(report).diameter
    distance = np.linalg.norm(mesh.nodes - chart.P, axis=1)
    tail = (distance > radius * sqrt_d) & (distance <= far) & (report.u.values > 0.0)
    mu1 = float("nan")
    if np.count_nonzero(tail) >= MIN_TAIL_POINTS:
        slope, _ = np.polyfit(distance[tail] / sqrt_d, np.log(report.u.values[tail]), 1)
        mu1 = float(-slope)
    else:
        logger.info("d=%g: too few nodes beyond the patch for a tail fit", report.d)

    return ConcentrationMetrics(
        d=report.d,
        dist_over_sqrtd=report.dist_to_boundary / sqrt_d,
        profile_sup_err=sup_err,
        mu1=mu1,
        patch_radius=radius,
    )


@dataclass(frozen=True)
class EnergyBudget:
    value: float

    @property
    def passed(self) -> bool:
        return self.value < 4.0 * np.pi


def scaled_energy_budget(report: SolveReport) -> EnergyBudget:
    """(d |grad u|^2 + |u|^2) / d, the H1 energy of u(P + sqrt(d) z)."""
    return EnergyBudget(value=quadratic_part(report.u, report.d) / report.d)
