from __future__ import annotations

from .assembly import AssembledOperators, assemble, element_gradients, operators
from .energy import (
    energy_J,
    gradient_energy,
    gradient_J,
    h1_inner,
    l2_energy,
    nehari_G,
    nonlinear_mass,
    potential,
    quadratic_part,
    ray_energy,
    residual,
)
from .field import Field
from .interpolate import FieldInterpolator
from .recovery import recovered_gradient, triangle_gradients

__all__ = [
    "AssembledOperators",
    "Field",
    "FieldInterpolator",
    "assemble",
    "element_gradients",
    "energy_J",
    "gradient_J",
    "gradient_energy",
    "h1_inner",
    "l2_energy",
    "nehari_G",
    "nonlinear_mass",
    "operators",
    "potential",
    "quadratic_part",
    "ray_energy",
    "recovered_gradient",
    "residual",
    "triangle_gradients",
]
