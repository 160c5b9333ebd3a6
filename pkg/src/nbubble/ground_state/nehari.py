from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy.optimize import brentq

from nbubble.errors import BracketingError, NegativeFieldError, ZeroFieldError
from nbubble.fem import energy_J, operators, quadratic_part, ray_energy
from nbubble.radial.nonlinearity import NONLINEARITY
from nbubble.settings import settings

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from nbubble.fem import Field

logger = logging.getLogger(__name__)

BRACKET_GROWTH = 2.0


def _ray_slope(
    s: float,
    quadratic: float,
    weights: NDArray[np.float64],
    values: NDArray[np.float64],
) -> float:
    """G(s u) / s^2, positive near 0 and strictly decreasing in s."""
    su2 = (s * values) ** 2
    return quadratic - float(weights @ (values**2 * np.expm1(su2)))


def _ray_slope_derivative(
    s: float,
    weights: NDArray[np.float64],
    values: NDArray[np.float64],
) -> float:
    su2 = (s * values) ** 2
    return -float(weights @ (2.0 * s * values**4 * np.exp(su2)))


def nehari_root(
    quadratic: float,
    weights: NDArray[np.float64],
    values: NDArray[np.float64],
) -> float:
    """
    Positive root t of t^2 quadratic = sum weights (t v)^2 (e^{(t v)^2} - 1).

    This is the Nehari scale of any discretization whose nonlinear term is a weighted
    sum of nodal or quadrature values: the mesh (lumped mass) and the chart quadrature
    both come through here.
    """
    peak = float(np.max(np.abs(values))) if values.size else 0.0
    if peak == 0.0 or quadratic <= 0.0:
        raise ZeroFieldError()

    ceiling = settings.OVERFLOW_THRESHOLD / peak
    hi = np.sqrt(np.log(2.0)) / peak
    while _ray_slope(hi, quadratic, weights, values) > 0.0:
        if hi >= ceiling:
            raise BracketingError(
                f"Nehari functional stays positive up to the overflow scale {ceiling:.6g}.",
            )
        hi = min(BRACKET_GROWTH * hi, ceiling)

    t = brentq(
        _ray_slope,
        0.0,
        hi,
        args=(quadratic, weights, values),
        xtol=1e-300,
        rtol=4 * np.finfo(float).eps,
    )
    # one Newton step removes the last bits brentq leaves on the flat side
    slope = _ray_slope_derivative(t, weights, values)
    if slope < 0.0:
        polished = t - _ray_slope(t, quadratic, weights, values) / slope
        if 0.0 < polished <= hi:
            t = polished
    return float(t)


def _check_field(u: Field) -> None:
    negative = np.flatnonzero(u.values < 0.0)
    if negative.size:
        raise NegativeFieldError(int(negative[0]))
    if not np.any(u.values > 0.0):
        raise ZeroFieldError()


def nehari_scale(u: Field, d: float) -> float:
    """The factor t > 0 that puts t u on the discrete Nehari set G_d = 0."""
    _check_field(u)
    quadratic = quadratic_part(u, d)
    return nehari_root(quadratic, operators(u.mesh).lumped_mass, u.values)


@dataclass(frozen=True)
class RayMaximum:
    M: float
    t_star: float
    scan_max: float

    @property
    def verified(self) -> bool:
        return self.scan_max <= self.M + 1e-12 * max(1.0, abs(self.M))


def max_over_ray(u: Field, d: float) -> RayMaximum:
    """sup over t >= 0 of J_d(t u), checked against a scan of (0, 2 t*]."""
    t_star = nehari_scale(u, d)
    M = energy_J(u.scaled(t_star), d)
    t = np.linspace(0.0, 2.0 * t_star, settings.RAY_SCAN_POINTS + 1)[1:]
    scan_max = float(np.max(ray_energy(u, d, t)))
    result = RayMaximum(M=M, t_star=t_star, scan_max=scan_max)
    if not result.verified:
        logger.warning(
            "warning: ray scan found %.15g above the Nehari level %.15g",
            scan_max,
            M,
        )
    return result


def positive_part(u: Field) -> Field:
    return u.with_values(np.maximum(u.values, 0.0))


def nehari_project(u: Field, d: float) -> Field:
    """Clamp at zero, then rescale onto the Nehari set."""
    clamped = positive_part(u)
    return clamped.scaled(nehari_scale(clamped, d))


def nehari_lower_bound(u: Field) -> float:
    """1/4 of the lumped int u^2 (e^{u^2} - 1): J_d never drops below it on the Nehari set."""
    NONLINEARITY.check(u.values)
    return 0.25 * float(operators(u.mesh).lumped_mass @ NONLINEARITY.wf(u.values))
