from __future__ import annotations

from .solve_report import SolveReportFactory, unit_disk_mesh

__all__ = [
    "SolveReportFactory",
    "unit_disk_mesh",
]
