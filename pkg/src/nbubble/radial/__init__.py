from __future__ import annotations

from .identities import (
    HalfPlaneMoments,
    PohozaevResiduals,
    energy_I,
    gamma_constant,
    half_plane_moments,
    nehari_residual,
    pohozaev_checks,
)
from .nonlinearity import NONLINEARITY, Nonlinearity
from .profile import ProfileDict, RadialProfile, decay_rate
from .shooting import (
    RadialTrajectory,
    cached_ground_state,
    integrate_radial,
    shoot_ground_state,
)

__all__ = [
    "NONLINEARITY",
    "HalfPlaneMoments",
    "Nonlinearity",
    "PohozaevResiduals",
    "ProfileDict",
    "RadialProfile",
    "RadialTrajectory",
    "cached_ground_state",
    "decay_rate",
    "energy_I",
    "gamma_constant",
    "half_plane_moments",
    "integrate_radial",
    "nehari_residual",
    "pohozaev_checks",
    "shoot_ground_state",
]
