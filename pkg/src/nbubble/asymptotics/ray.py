from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from scipy.optimize import minimize_scalar

from nbubble.fem import energy_J, ray_energy
from nbubble.ground_state import nehari_scale

if TYPE_CHECKING:
    from collections.abc import Callable

    from nbubble.fem import Field

GOLDEN_TOL = 1e-12
GOLDEN_SPAN = 0.5  # the search brackets t0 by this relative margin on either side


@dataclass(frozen=True)
class RayLevel:
    """The maximum of h(t) = J_d(t phi) and where it is reached."""

    M: float
    t0: float
    t_golden: float

    @property
    def discrepancy(self) -> float:
        return abs(self.t0 - self.t_golden)


def ray_maximizer_t0(phi: Field, d: float) -> float:
    """The maximizer of t -> J_d(t phi) is the Nehari scale of phi."""
    return nehari_scale(phi, d)


def golden_maximizer(h: Callable[[float], float], t0: float) -> float:
    """Golden-section search for the maximum of h around t0."""
    result = minimize_scalar(
        lambda t: -h(t),
        bracket=((1.0 - GOLDEN_SPAN) * t0, t0, (1.0 + GOLDEN_SPAN) * t0),
        method="golden",
        tol=GOLDEN_TOL,
    )
    return float(result.x)


def ray_level(phi: Field, d: float) -> RayLevel:
    t0 = ray_maximizer_t0(phi, d)
    t_golden = golden_maximizer(lambda t: float(ray_energy(phi, d, t)), t0)
    return RayLevel(M=energy_J(phi.scaled(t0), d), t0=t0, t_golden=t_golden)
