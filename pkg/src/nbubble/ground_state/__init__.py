from __future__ import annotations

from .checks import EnergyBracket, LocalMaxima, count_local_maxima, energy_bracket_check
from .nehari import (
    RayMaximum,
    max_over_ray,
    nehari_lower_bound,
    nehari_project,
    nehari_root,
    nehari_scale,
    positive_part,
)
from .solver import SolveReport, SolveReportDict, initial_field, solve_ground_state

__all__ = [
    "EnergyBracket",
    "LocalMaxima",
    "RayMaximum",
    "SolveReport",
    "SolveReportDict",
    "count_local_maxima",
    "energy_bracket_check",
    "initial_field",
    "max_over_ray",
    "nehari_lower_bound",
    "nehari_project",
    "nehari_root",
    "nehari_scale",
    "positive_part",
    "solve_ground_state",
]
