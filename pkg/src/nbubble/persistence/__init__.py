from __future__ import annotations

from .formats import (
    read_field,
    read_mesh,
    read_profile,
    read_solution,
    solution_paths,
    write_field,
    write_mesh,
    write_profile,
    write_solution,
)
from .plots import plot_levels, plot_overlay
from .reports import (
    SWEEP_COLUMNS,
    SweepTable,
    dumps_json,
    read_json,
    read_sweep_csv,
    write_json,
    write_moser_csv,
    write_sweep_csv,
)

__all__ = [
    "SWEEP_COLUMNS",
    "SweepTable",
    "dumps_json",
    "plot_levels",
    "plot_overlay",
    "read_field",
    "read_json",
    "read_mesh",
    "read_profile",
    "read_solution",
    "read_sweep_csv",
    "solution_paths",
    "write_field",
    "write_json",
    "write_mesh",
    "write_moser_csv",
    "write_profile",
    "write_solution",
    "write_sweep_csv",
]
