from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, TypedDict

import numpy as np

from nbubble.enums import DomainKind, InitPreset
from nbubble.errors import DegenerateAxisError, InvalidParameterError
from nbubble.fem import FieldInterpolator
from nbubble.geometry import build_mesh, chart_forward
from nbubble.ground_state import solve_ground_state
from nbubble.radial import energy_I, gamma_constant
from nbubble.settings import settings
from nbubble.symmetry import SymmetryReport, analyze_symmetry
from nbubble.utils import log_info, suppress

from .bump import TestFunctionSpec, build_test_function, bump_chart
from .concentration import (
    ConcentrationMetrics,
    EnergyBudget,
    concentration_chart,
    concentration_report,
    scaled_energy_budget,
)
from .expansion import MIN_SWEEP, expansion_fit
from .ray import RayLevel, ray_level

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import ArrayLike, NDArray

    from nbubble.geometry import Domain, Mesh
    from nbubble.ground_state import SolveReport
    from nbubble.radial import RadialProfile

    from .expansion import ExpansionReport

logger = logging.getLogger(__name__)

TRACE_POINTS = 81


def sweep_mesh_policy(domain: Domain, refine_point: ArrayLike) -> Callable[[float], Mesh]:
    """Meshes refined near refine_point so that the local size there is sqrt(d) / 24."""
    radius = domain.radius if domain.radius is not None else 0.5 * domain.diameter

    def policy(d: float) -> Mesh:
        h_local = settings.SWEEP_H_FACTOR * np.sqrt(d)
        levels = settings.SWEEP_REFINE_LEVELS
        while levels > 0 and h_local * 2**levels > radius:
            levels -= 1
        return build_mesh(domain, h_local * 2**levels, refine_point, levels)

    return policy


def parse_sweep(d_list: Sequence[float]) -> NDArray[np.float64]:
    """Sweep values in decreasing order."""
    d = np.asarray(d_list, dtype=float)
    if d.ndim != 1 or d.size == 0:
        raise InvalidParameterError("The d-list must not be empty.")
    if np.any(~np.isfinite(d)) or np.any(d <= 0):
        raise InvalidParameterError("Every d in the sweep must be positive.")
    d = np.sort(d)[::-1]
    if np.any(np.diff(d) == 0):
        raise InvalidParameterError("The d-list holds duplicate values.")
    return d


class SweepRowDict(TypedDict):
    d: float
    m_d: float
    M_test: float
    t0: float
    dist_over_sqrtd: float
    profile_sup_err: float
    mu1: float
    budget: float
    refl_residual: float
    angular_min: float
    vertical_min: float
    maxima_count: int


@dataclass(frozen=True, eq=False)
class SweepEntry:
    d: float
    report: SolveReport
    level: RayLevel
    concentration: ConcentrationMetrics
    budget: EnergyBudget
    symmetry: SymmetryReport | None = None
    # rescaled boundary trace u_d(Phi(sqrt(d) (s, 0))) next to w(|s|)
    trace_s: NDArray[np.float64] = field(default_factory=lambda: np.empty(0), repr=False)
    trace_u: NDArray[np.float64] = field(default_factory=lambda: np.empty(0), repr=False)
    trace_w: NDArray[np.float64] = field(default_factory=lambda: np.empty(0), repr=False)

    def to_row(self) -> SweepRowDict:
        symmetry = self.symmetry
        return {
            "d": self.d,
            "m_d": self.report.m_d,
            "M_test": self.level.M,
            "t0": self.level.t0,
            "dist_over_sqrtd": self.concentration.dist_over_sqrtd,
            "profile_sup_err": self.concentration.profile_sup_err,
            "mu1": self.concentration.mu1,
            "budget": self.budget.value,
            "refl_residual": symmetry.reflection_residual if symmetry else float("nan"),
            "angular_min": symmetry.angular_min if symmetry else float("nan"),
            "vertical_min": symmetry.vertical_min if symmetry else float("nan"),
            "maxima_count": symmetry.maxima_count if symmetry else -1,
        }


class SummaryDict(TypedDict):
    half_I: float
    gamma: float
    curvature: float
    expected_gamma_coeff: float
    fitted_gamma_coeff: float
    raw_gamma_coeff: float
    fitted_beta: float
    t0_log_slope: float
    m_d_over_d: list[float]
    m_d_over_sqrt_d: list[float]


@dataclass(frozen=True, eq=False)
class SweepResult:
    entries: list[SweepEntry]
    half_I: float
    gamma: float
    curvature: float
    expansion: ExpansionReport | None = None

    @property
    def d_list(self) -> NDArray[np.float64]:
        return np.array([entry.d for entry in self.entries])

    @property
    def m_d(self) -> NDArray[np.float64]:
        return np.array([entry.report.m_d for entry in self.entries])

    def summary(self) -> SummaryDict:
        fitted = self.expansion.fitted if self.expansion else None
        nan = float("nan")
        d = self.d_list
        return {
            "half_I": self.half_I,
            "gamma": self.gamma,
            "curvature": self.curvature,
            "expected_gamma_coeff": self.curvature * self.gamma,
            "fitted_gamma_coeff": fitted.fitted_gamma_coeff if fitted else nan,
            "raw_gamma_coeff": fitted.raw_gamma_coeff if fitted else nan,
            "fitted_beta": fitted.fitted_beta if fitted else nan,
            "t0_log_slope": fitted.t0_log_slope if fitted else nan,
            "m_d_over_d": (self.m_d / d).tolist(),
            "m_d_over_sqrt_d": (self.m_d / np.sqrt(d)).tolist(),
        }


def _boundary_trace(
    report: SolveReport,
    profile: RadialProfile,
    metrics: ConcentrationMetrics,
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    chart = concentration_chart(report)
    s = np.linspace(-metrics.patch_radius, metrics.patch_radius, TRACE_POINTS)
    z = np.stack([s, np.zeros_like(s)], axis=-1)
    values = FieldInterpolator(report.u)(chart_forward(chart, np.sqrt(report.d) * z))
    return s, values, profile(np.abs(s))


def sweep_entry(
    domain: Domain,
    d: float,
    profile: RadialProfile,
    policy: Callable[[float], Mesh],
    *,
    symmetry: bool = False,
) -> SweepEntry:
    mesh = policy(d)
    logger.info("sweep d=%g on %d nodes", d, mesh.n_nodes)
    report = solve_ground_state(d, mesh, InitPreset.CURVATURE_BUMP, profile=profile)
    spec = TestFunctionSpec(chart=bump_chart(domain), profile=profile, d=d)
    level = ray_level(build_test_function(spec, mesh), d)
    metrics = concentration_report(report, profile)
    trace_s, trace_u, trace_w = _boundary_trace(report, profile, metrics)
    diagnostics: SymmetryReport | None = None
    if symmetry:
        with suppress(DegenerateAxisError, log="no symmetry axis at d=%(d)s", d=d):
            diagnostics = analyze_symmetry(report)
    return SweepEntry(
        d=d,
        report=report,
        level=level,
        concentration=metrics,
        budget=scaled_energy_budget(report),
        symmetry=diagnostics,
        trace_s=trace_s,
        trace_u=trace_u,
        trace_w=trace_w,
    )


def run_sweep(
    domain: Domain,
    d_list: Sequence[float],
    profile: RadialProfile,
    *,
    workers: int | None = None,
) -> SweepResult:
    """
    Solve, test-level and diagnose every d; entries come back in decreasing d whatever
    order the workers finish in. The expansion is fitted from chart quadrature levels,
    which resolve the profile at every d, while each entry keeps its mesh level.
    """
    d = parse_sweep(d_list)
    chart = bump_chart(domain)
    policy = sweep_mesh_policy(domain, chart.P)
    symmetry = domain.kind is DomainKind.UNIT_DISK
    workers = min(settings.NB_THREADS if workers is None else workers, len(d))

    def run(value: float) -> SweepEntry:
        return sweep_entry(domain, float(value), profile, policy, symmetry=symmetry)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(run, d))
    else:
        entries = [run(value) for value in d]

    half_I = 0.5 * energy_I(profile)
    gamma = gamma_constant(profile)
    expansion = None
    if len(d) >= MIN_SWEEP:
        m_d = [entry.report.m_d for entry in entries]
        expansion = expansion_fit(d.tolist(), chart, profile, m_d=m_d)
    else:
        log_info("sweep of %(n)s values is too short for the expansion fit", n=len(d))
    return SweepResult(
        entries=entries,
        half_I=half_I,
        gamma=gamma,
        curvature=chart.phi2_at_0,
        expansion=expansion,
    )
