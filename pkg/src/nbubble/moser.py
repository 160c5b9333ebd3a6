"""
Concentrating Moser functions at a boundary point and the Trudinger-Moser functional
int u^2 (e^{alpha u^2} - 1) over the unit ball of W^{1,2}.

The functions live on the half-disk of radius delta around the point: a plateau on
|x| < delta sqrt(eps), a logarithmic ramp down to zero at |x| = delta, zero beyond.
On this model the Dirichlet energy is exactly one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, TypedDict

import numpy as np
from scipy.integrate import quad

from .enums import Growth
from .errors import InvalidParameterError, OverflowNumericalError
from .fem import Field, gradient_energy, l2_energy, operators
from .settings import settings

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import ArrayLike, NDArray

logger = logging.getLogger(__name__)

# e^{x} overflows double precision a little above 709
EXPONENT_CEILING = 700.0
BOUNDED_RATIO = 2.0
DIVERGING_R2 = 0.9
MIN_POINTS = 4  # decade values in the eps-list
MIN_DECADES = 3.0


def _check_eps(eps: float) -> None:
    if not 0.0 < eps < 1.0:
        raise InvalidParameterError(f"Moser scale eps must lie in (0, 1), got {eps}.")


@dataclass(frozen=True)
class MoserFunction:
    eps: float
    delta: float = settings.MOSER_DELTA

    def __post_init__(self) -> None:
        _check_eps(self.eps)
        if not self.delta > 0:
            raise InvalidParameterError(f"Outer radius must be positive, got {self.delta}.")

    @property
    def log_inverse(self) -> float:
        return float(np.log(1.0 / self.eps))

    @property
    def plateau(self) -> float:
        return float(np.sqrt(self.log_inverse / (2.0 * np.pi)))

    @property
    def ramp_coefficient(self) -> float:
        """c in c log(delta / |x|) on the ramp."""
        return float(np.sqrt(2.0 / (np.pi * self.log_inverse)))

    @property
    def inner_radius(self) -> float:
        return self.delta * np.sqrt(self.eps)

    @property
    def ramp_length(self) -> float:
        """log(delta / inner_radius), the ramp in the variable s = log(delta / r)."""
        return 0.5 * self.log_inverse

    def radial(self, r: ArrayLike) -> NDArray[np.float64]:
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore"):
            ramp = self.ramp_coefficient * np.log(self.delta / r)
        return np.where(
            r <= self.inner_radius,
            self.plateau,
            np.where(r < self.delta, ramp, 0.0),
        )

    def __call__(self, x: ArrayLike) -> NDArray[np.float64]:
        return self.radial(np.linalg.norm(np.asarray(x, dtype=float), axis=-1))

    def _half_disk(self, fn: Callable[[float], float], plateau: float) -> float:
        """
        pi int_0^delta g(r) r dr for g constant on the plateau; the ramp is integrated in
        s = log(delta / r), where fn(s) already carries the factor r^2.
        """
        inner = 0.5 * np.pi * self.inner_radius**2 * plateau
        ramp, _ = quad(fn, 0.0, self.ramp_length, limit=200, epsabs=0.0, epsrel=1e-12)
        return float(inner + np.pi * ramp)

    @cached_property
    def dirichlet_energy(self) -> float:
        c = self.ramp_coefficient
        return self._half_disk(lambda s: c * c, 0.0)

    @cached_property
    def l2_norm_squared(self) -> float:
        c, delta = self.ramp_coefficient, self.delta
        return self._half_disk(
            lambda s: (c * s) ** 2 * delta**2 * np.exp(-2.0 * s),
            self.plateau**2,
        )

    @property
    def h1_norm(self) -> float:
        return float(np.sqrt(self.dirichlet_energy + self.l2_norm_squared))


def moser_eval(eps: float, delta: float, x: ArrayLike) -> NDArray[np.float64]:
    """Closed-form value of the Moser function at points x of the half-disk model."""
    function = MoserFunction(eps=eps, delta=delta)
    x = np.asarray(x, dtype=float)
    norm = np.linalg.norm(x, axis=-1)
    if np.any(norm > delta * (1 + 1e-12)):
        raise InvalidParameterError(
            f"Point at distance {float(np.max(norm)):g} lies outside the model radius {delta:g}.",
        )
    return function.radial(norm)


def _check_exponent(alpha: float, peak: float, plateau: float) -> None:
    if alpha * peak * peak > EXPONENT_CEILING:
        raise OverflowNumericalError(
            plateau,
            f"e^(alpha u^2) overflows at plateau value {plateau:.6g} with alpha={alpha:g}.",
        )


def tm_functional(u: MoserFunction | Field, alpha: float) -> float:
    """int v^2 (e^{alpha v^2} - 1) for v = u / |u|_{W^{1,2}}."""
    if alpha < 0:
        raise InvalidParameterError(f"Exponent alpha must be nonnegative, got {alpha}.")
    if isinstance(u, Field):
        norm = float(np.sqrt(gradient_energy(u) + l2_energy(u)))
        if norm == 0.0 or alpha == 0.0:
            return 0.0
        v = u.values / norm
        _check_exponent(alpha, float(np.max(np.abs(v))), float(np.max(np.abs(u.values))))
        return float(operators(u.mesh).lumped_mass @ (v * v * np.expm1(alpha * v * v)))

    if alpha == 0.0:
        return 0.0
    norm = u.h1_norm
    top = u.plateau / norm
    _check_exponent(alpha, top, u.plateau)
    slope = u.ramp_coefficient / norm
    delta = u.delta

    def ramp(s: float) -> float:
        v = slope * s
        return v * v * np.expm1(alpha * v * v) * delta**2 * np.exp(-2.0 * s)

    return u._half_disk(ramp, top * top * np.expm1(alpha * top * top))


class SharpnessRowDict(TypedDict):
    alpha: float
    eps: float
    value: float
    classification: str


@dataclass(frozen=True, eq=False)
class SharpnessTable:
    alphas: NDArray[np.float64]
    eps_list: NDArray[np.float64]
    values: NDArray[np.float64]  # one row per alpha
    classifications: list[Growth]
    slopes: NDArray[np.float64]  # against log(1/eps)
    r_squared: NDArray[np.float64]

    def rows(self) -> list[SharpnessRowDict]:
        return [
            {
                "alpha": float(alpha),
                "eps": float(eps),
                "value": float(self.values[i, j]),
                "classification": str(self.classifications[i]),
            }
            for i, alpha in enumerate(self.alphas)
            for j, eps in enumerate(self.eps_list)
        ]


def _linear_fit(x: NDArray[np.float64], y: NDArray[np.float64]) -> tuple[float, float]:
    slope, intercept = np.polyfit(x, y, 1)
    total = float(np.sum((y - y.mean()) ** 2))
    if total == 0.0:
        return float(slope), 0.0
    residual = float(np.sum((y - (slope * x + intercept)) ** 2))
    return float(slope), 1.0 - residual / total


def classify_growth(values: NDArray[np.float64], log_inverse: NDArray[np.float64]) -> Growth:
    """bounded if the last value is within twice the first, diverging if linear in log(1/eps)."""
    first, last = float(values[0]), float(values[-1])
    if last <= BOUNDED_RATIO * first or np.all(values == 0.0):
        return Growth.BOUNDED
    slope, r_squared = _linear_fit(log_inverse, values)
    if slope > 0.0 and r_squared > DIVERGING_R2:
        return Growth.DIVERGING
    return Growth.UNDECIDED


def sharpness_sweep(
    alphas: Sequence[float],
    eps_list: Sequence[float],
    delta: float | None = None,
) -> SharpnessTable:
    delta = settings.MOSER_DELTA if delta is None else delta
    eps = np.asarray(eps_list, dtype=float)
    alpha = np.asarray(alphas, dtype=float)
    if alpha.size == 0:
        raise InvalidParameterError("At least one alpha is needed.")
    if eps.size < MIN_POINTS or np.any(np.diff(eps) >= 0):
        raise InvalidParameterError(
            f"The eps-list needs at least {MIN_POINTS} strictly decreasing values.",
        )
    for value in eps:
        _check_eps(float(value))
    decades = float(np.log10(eps[0] / eps[-1]))
    if decades < MIN_DECADES - 1e-9:
        raise InvalidParameterError(
            f"The eps-list spans {decades:.3g} decades, at least {MIN_DECADES:g} are needed.",
        )

    functions = [MoserFunction(eps=float(e), delta=delta) for e in eps]
    values = np.array([[tm_functional(fn, float(a)) for fn in functions] for a in alpha])
    log_inverse = np.log(1.0 / eps)
    fits = [_linear_fit(log_inverse, row) for row in values]
    table = SharpnessTable(
        alphas=alpha,
        eps_list=eps,
        values=values,
        classifications=[classify_growth(row, log_inverse) for row in values],
        slopes=np.array([fit[0] for fit in fits]),
        r_squared=np.array([fit[1] for fit in fits]),
    )
    for a, growth, (slope, r2) in zip(alpha, table.classifications, fits, strict=True):
        logger.info("alpha=%.6g: %s (slope %.4g, R^2 %.4f)", a, growth, slope, r2)
    return table
