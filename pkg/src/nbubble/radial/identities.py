from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, TypedDict

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import simpson

from .nonlinearity import NONLINEARITY

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from .profile import RadialProfile

ANGULAR_NODES = 32


def _radial(profile: RadialProfile, integrand: NDArray[np.float64]) -> float:
    return float(simpson(integrand, x=profile.r))


def energy_I(profile: RadialProfile) -> float:
    """I(w) = pi * int (w'^2 + w^2 - 2F(w)) r dr."""
    w, dw, r = profile.w, profile.dw, profile.r
    return np.pi * _radial(profile, (dw**2 + w**2 - 2.0 * NONLINEARITY.F(w)) * r)


def gamma_constant(profile: RadialProfile) -> float:
    """One third of the z2-moment of w'(|z|)^2 over the upper half-plane."""
    return 2.0 / 3.0 * _radial(profile, profile.dw**2 * profile.r**2)


class MomentsDict(TypedDict):
    gradient: float
    mass: float
    weighted_mass: float
    gamma: float


@dataclass(frozen=True)
class HalfPlaneMoments:
    gradient: float  # int over R^2_+ of |grad w|^2
    mass: float  # int over R^2_+ of w^2
    weighted_mass: float  # int over R^2_+ of w^2 z2
    gamma: float

    def to_dict(self) -> MomentsDict:
        return {
            "gradient": self.gradient,
            "mass": self.mass,
            "weighted_mass": self.weighted_mass,
            "gamma": self.gamma,
        }


def half_plane_moments(profile: RadialProfile) -> HalfPlaneMoments:
    w, dw, r = profile.w, profile.dw, profile.r
    return HalfPlaneMoments(
        gradient=np.pi * _radial(profile, dw**2 * r),
        mass=np.pi * _radial(profile, w**2 * r),
        weighted_mass=2.0 * _radial(profile, w**2 * r**2),
        gamma=gamma_constant(profile),
    )


def nehari_residual(profile: RadialProfile) -> float:
    """Relative gap between int(|grad w|^2 + w^2) and int w^2(e^{w^2} - 1) over the plane."""
    w, dw, r = profile.w, profile.dw, profile.r
    quadratic = _radial(profile, (dw**2 + w**2) * r)
    nonlinear = _radial(profile, NONLINEARITY.wf(w) * r)
    if quadratic == 0.0:
        return 0.0
    return abs(quadratic - nonlinear) / quadratic


class PohozaevDict(TypedDict):
    tangential: float
    normal: float
    energy: float
    nehari: float


@dataclass(frozen=True)
class PohozaevResiduals:
    """|moment / gamma - expected| for the three z2-weighted half-plane identities."""

    tangential: float  # (d1 w)^2 z2, expected gamma
    normal: float  # (d2 w)^2 z2, expected 2 gamma
    energy: float  # ((|grad w|^2 + w^2)/2 - F(w)) z2, expected 2 gamma
    nehari: float

    @property
    def worst(self) -> float:
        return max(self.tangential, self.normal, self.energy)

    def to_dict(self) -> PohozaevDict:
        return {
            "tangential": self.tangential,
            "normal": self.normal,
            "energy": self.energy,
            "nehari": self.nehari,
        }


def half_plane_quadrature(
    profile: RadialProfile,
    integrand: NDArray[np.float64],
) -> float:
    """
    Tensor polar quadrature over the upper half-plane.

    `integrand` holds values on the (r, theta) grid of `polar_grid`, without the
    Jacobian r; theta uses Gauss-Legendre nodes on (0, pi), r the profile grid.
    """
    _, weights = leggauss(ANGULAR_NODES)
    angular = integrand @ (0.5 * np.pi * weights)
    return float(simpson(angular * profile.r, x=profile.r))


def polar_grid(profile: RadialProfile) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    nodes, _ = leggauss(ANGULAR_NODES)
    theta = 0.5 * np.pi * (nodes + 1.0)
    return np.meshgrid(profile.r, theta, indexing="ij")


def pohozaev_checks(profile: RadialProfile) -> PohozaevResiduals:
    gamma = gamma_constant(profile)
    if gamma == 0.0:
        return PohozaevResiduals(tangential=0.0, normal=0.0, energy=0.0, nehari=0.0)

    r, theta = polar_grid(profile)
    w = profile.w[:, None] * np.ones_like(theta)
    dw = profile.dw[:, None] * np.ones_like(theta)
    z2 = r * np.sin(theta)
    d1 = dw * np.cos(theta)
    d2 = dw * np.sin(theta)
    density = 0.5 * (d1**2 + d2**2 + w**2) - NONLINEARITY.F(w)

    tangential = half_plane_quadrature(profile, d1**2 * z2)
    normal = half_plane_quadrature(profile, d2**2 * z2)
    energy = half_plane_quadrature(profile, density * z2)
    return PohozaevResiduals(
        tangential=abs(tangential / gamma - 1.0),
        normal=abs(normal / gamma - 2.0),
        energy=abs(energy / gamma - 2.0),
        nehari=nehari_residual(profile),
    )
