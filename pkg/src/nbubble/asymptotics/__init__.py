from __future__ import annotations

from .bump import TestFunctionSpec, build_test_function, bump_chart, check_resolution
from .concentration import (
    ConcentrationMetrics,
    EnergyBudget,
    concentration_chart,
    concentration_report,
    scaled_energy_budget,
)
from .expansion import (
    ExpansionReport,
    FittedCoefficients,
    chart_level,
    expansion_fit,
    fit_coefficients,
    mesh_level,
)
from .ray import RayLevel, golden_maximizer, ray_level, ray_maximizer_t0
from .sweep import (
    SweepEntry,
    SweepResult,
    parse_sweep,
    run_sweep,
    sweep_entry,
    sweep_mesh_policy,
)

__all__ = [
    "ConcentrationMetrics",
    "EnergyBudget",
    "ExpansionReport",
    "FittedCoefficients",
    "RayLevel",
    "SweepEntry",
    "SweepResult",
    "TestFunctionSpec",
    "build_test_function",
    "bump_chart",
    "chart_level",
    "check_resolution",
    "concentration_chart",
    "concentration_report",
    "expansion_fit",
    "fit_coefficients",
    "golden_maximizer",
    "mesh_level",
    "parse_sweep",
    "ray_level",
    "ray_maximizer_t0",
    "run_sweep",
    "scaled_energy_budget",
    "sweep_entry",
    "sweep_mesh_policy",
]
