from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, TypedDict

import numpy as np
from numpy.polynomial.legendre import leggauss

from nbubble.errors import InvalidParameterError
from nbubble.geometry import StraighteningChart
from nbubble.ground_state import nehari_root
from nbubble.radial import NONLINEARITY, energy_I, gamma_constant

from .bump import TestFunctionSpec, build_test_function
from .ray import RayLevel, golden_maximizer, ray_level

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import ArrayLike, NDArray

    from nbubble.geometry import Mesh
    from nbubble.radial import RadialProfile

logger = logging.getLogger(__name__)

MIN_SWEEP = 4
PANEL_WIDTH = 0.25  # radial quadrature panel, in units of sqrt(d)
PANEL_NODES = 8
ANGULAR_NODES = 64


def _radial_rule(breaks: Sequence[float], width: float) -> tuple[NDArray, NDArray]:
    nodes, weights = leggauss(PANEL_NODES)
    r, w = [], []
    for lo, hi in zip(breaks[:-1], breaks[1:], strict=True):
        panels = max(1, int(np.ceil((hi - lo) / width)))
        edges = np.linspace(lo, hi, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        r.append((mid[:, None] + half[:, None] * nodes).ravel())
        w.append((half[:, None] * weights).ravel())
    return np.concatenate(r), np.concatenate(w)


def chart_level(spec: TestFunctionSpec) -> RayLevel:
    """
    max over t of J_d(t phi_d), integrated in chart coordinates instead of on a mesh.

    With x = Phi(z) the energy becomes an integral over the half-disk |z| < 2k of
    (d |DPhi^{-T} grad w_*|^2 + w_*^2) and F(w_*) against det DPhi, done by Gauss
    panels in |z| (broken at the cutoff kink) times Gauss-Legendre in the angle.
    """
    chart = spec.chart
    top = min(2.0 * spec.k, spec.profile.r_max * spec.sqrt_d)
    breaks = [0.0, spec.k, top] if spec.k < top else [0.0, top]
    r, wr = _radial_rule(breaks, PANEL_WIDTH * spec.sqrt_d)
    nodes, weights = leggauss(ANGULAR_NODES)
    theta = 0.5 * np.pi * (nodes + 1.0)
    wt = 0.5 * np.pi * weights

    R, TH = np.meshgrid(r, theta, indexing="ij")
    direction = np.stack([np.cos(TH), np.sin(TH)], axis=-1)
    z = R[..., None] * direction
    jac = chart.local_jacobian(z)
    det = np.linalg.det(jac)
    if np.any(det <= 0.0):
        raise InvalidParameterError("Straightening map folds over inside the cutoff support.")

    values = spec.radial(R)
    grad_z = spec.radial_derivative(R)[..., None] * direction
    grad_x = np.linalg.solve(np.swapaxes(jac, -1, -2), grad_z[..., None])[..., 0]
    weight = (wr * r)[:, None] * wt[None, :] * det

    quadratic = float(np.sum(weight * (spec.d * np.sum(grad_x**2, axis=-1) + values**2)))
    flat_weight, flat_values = weight.ravel(), values.ravel()

    def h(t: float) -> float:
        return 0.5 * t * t * quadratic - float(flat_weight @ NONLINEARITY.F(t * flat_values))

    t0 = nehari_root(quadratic, flat_weight, flat_values)
    return RayLevel(M=h(t0), t0=t0, t_golden=golden_maximizer(h, t0))


def mesh_level(spec: TestFunctionSpec, mesh: Mesh) -> RayLevel:
    return ray_level(build_test_function(spec, mesh), spec.d)


class CoefficientsDict(TypedDict):
    half_I: float
    gamma: float
    curvature: float
    expected_gamma_coeff: float
    fitted_gamma_coeff: float
    raw_gamma_coeff: float
    fitted_beta: float
    t0_log_slope: float


@dataclass(frozen=True)
class FittedCoefficients:
    fitted_gamma_coeff: float  # intercept of (M_ref - M) / d^{3/2} extrapolated to d = 0
    raw_gamma_coeff: float  # same intercept with M_ref = I d / 2
    fitted_beta: float  # t0 - t_ref = beta sqrt(d) + O(d)
    t0_log_slope: float  # of log |t0 - t_ref| against log d


def fit_coefficients(
    d_list: ArrayLike,
    M_test: ArrayLike,
    t0: ArrayLike,
    half_I: float,
    *,
    M_ref: ArrayLike | None = None,
    t_ref: ArrayLike | None = None,
) -> FittedCoefficients:
    """
    Least-squares coefficients of the sqrt(d) corrections. M_ref and t_ref are the
    levels of the same cutoff on a straight boundary; they default to the untruncated
    values I d / 2 and 1.
    """
    d = np.asarray(d_list, dtype=float)
    M = np.asarray(M_test, dtype=float)
    t = np.asarray(t0, dtype=float)
    root = np.sqrt(d)
    flat_M = half_I * d if M_ref is None else np.asarray(M_ref, dtype=float)
    flat_t = np.ones_like(t) if t_ref is None else np.asarray(t_ref, dtype=float)

    _, intercept = np.polyfit(root, (flat_M - M) / d**1.5, 1)
    _, raw = np.polyfit(root, (half_I * d - M) / d**1.5, 1)
    shift = t - flat_t
    (beta, _), *_ = np.linalg.lstsq(np.stack([root, d], axis=1), shift, rcond=None)
    offset = np.maximum(np.abs(shift), np.finfo(float).tiny)
    slope, _ = np.polyfit(np.log(d), np.log(offset), 1)
    return FittedCoefficients(
        fitted_gamma_coeff=float(intercept),
        raw_gamma_coeff=float(raw),
        fitted_beta=float(beta),
        t0_log_slope=float(slope),
    )


def _empty() -> NDArray[np.float64]:
    return np.empty(0)


@dataclass(frozen=True, eq=False)
class ExpansionReport:
    d_list: NDArray[np.float64]
    m_d: NDArray[np.float64]  # NaN where no ground state was solved
    M_test: NDArray[np.float64]
    t0: NDArray[np.float64]
    t_golden: NDArray[np.float64]
    half_I: float
    gamma: float
    curvature: float
    fitted: FittedCoefficients
    # levels of the same cutoff on a straight boundary, empty when not computed
    M_flat: NDArray[np.float64] = field(default_factory=_empty, repr=False)
    t0_flat: NDArray[np.float64] = field(default_factory=_empty, repr=False)

    @property
    def fitted_gamma_coeff(self) -> float:
        return self.fitted.fitted_gamma_coeff

    @property
    def fitted_beta(self) -> float:
        return self.fitted.fitted_beta

    @property
    def expected_gamma_coeff(self) -> float:
        return self.curvature * self.gamma

    @property
    def leading_gap(self) -> NDArray[np.float64]:
        """|M_test / d - I / 2| per entry."""
        return np.abs(self.M_test / self.d_list - self.half_I)

    @property
    def t0_shift(self) -> NDArray[np.float64]:
        """t0 - t0_flat, or t0 - 1 without flat levels."""
        return self.t0 - (self.t0_flat if self.t0_flat.size else 1.0)

    def to_dict(self) -> CoefficientsDict:
        return {
            "half_I": self.half_I,
            "gamma": self.gamma,
            "curvature": self.curvature,
            "expected_gamma_coeff": self.expected_gamma_coeff,
            "fitted_gamma_coeff": self.fitted.fitted_gamma_coeff,
            "raw_gamma_coeff": self.fitted.raw_gamma_coeff,
            "fitted_beta": self.fitted.fitted_beta,
            "t0_log_slope": self.fitted.t0_log_slope,
        }


def check_sweep(d_list: Sequence[float]) -> NDArray[np.float64]:
    d = np.asarray(d_list, dtype=float)
    if d.ndim != 1 or len(d) < MIN_SWEEP:
        raise InvalidParameterError(f"A d-sweep needs at least {MIN_SWEEP} values.")
    if np.any(d <= 0) or np.any(np.diff(d) >= 0):
        raise InvalidParameterError("A d-sweep must be positive and strictly decreasing.")
    return d


def expansion_fit(
    d_list: Sequence[float],
    chart: StraighteningChart,
    profile: RadialProfile,
    mesh_policy: Callable[[float], Mesh] | None = None,
    *,
    m_d: Sequence[float] | None = None,
) -> ExpansionReport:
    """
    Test levels M[phi_d] along a d-sweep and the fitted coefficients of their
    expansion in sqrt(d). Without a mesh policy the levels come from chart quadrature.

    The cutoff at 2k lowers the level even on a straight boundary, by an amount that
    only vanishes like exp(-2k / sqrt(d)). Every d is therefore also levelled on a flat
    chart with the same k, and the curvature coefficient is fitted against that.
    """
    d = check_sweep(d_list)
    flat = StraighteningChart.flat(radius=chart.radius)
    levels, references = [], []
    for value in d:
        spec = TestFunctionSpec(chart=chart, profile=profile, d=float(value))
        level = chart_level(spec) if mesh_policy is None else mesh_level(spec, mesh_policy(value))
        reference = chart_level(
            TestFunctionSpec(chart=flat, profile=profile, d=float(value), k=spec.k),
        )
        logger.debug(
            "d=%g: M_test=%.12g t0=%.12f golden %.12f flat M=%.12g t0=%.12f",
            value,
            level.M,
            level.t0,
            level.t_golden,
            reference.M,
            reference.t0,
        )
        levels.append(level)
        references.append(reference)

    M_test = np.array([level.M for level in levels])
    t0 = np.array([level.t0 for level in levels])
    M_flat = np.array([level.M for level in references])
    t0_flat = np.array([level.t0 for level in references])
    half_I = 0.5 * energy_I(profile)
    return ExpansionReport(
        d_list=d,
        m_d=np.full(len(d), np.nan) if m_d is None else np.asarray(m_d, dtype=float),
        M_test=M_test,
        t0=t0,
        t_golden=np.array([level.t_golden for level in levels]),
        half_I=half_I,
        gamma=gamma_constant(profile),
        curvature=chart.phi2_at_0,
        fitted=fit_coefficients(d, M_test, t0, half_I, M_ref=M_flat, t_ref=t0_flat),
        M_flat=M_flat,
        t0_flat=t0_flat,
    )
