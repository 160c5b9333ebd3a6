from __future__ import annotations

from .chart import (
    StraighteningChart,
    boundary_chart,
    chart_forward,
    chart_inverse,
    cutoff_xi,
    jacobian_expansion_residual,
)
from .domain import BoundaryCurve, Domain
from .mesh import Mesh, build_disk_mesh, build_mesh, signed_areas

__all__ = [
    "BoundaryCurve",
    "Domain",
    "Mesh",
    "StraighteningChart",
    "boundary_chart",
    "build_disk_mesh",
    "build_mesh",
    "chart_forward",
    "chart_inverse",
    "cutoff_xi",
    "jacobian_expansion_residual",
    "signed_areas",
]
