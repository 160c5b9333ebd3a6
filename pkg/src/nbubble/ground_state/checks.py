from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from nbubble.settings import settings

if TYPE_CHECKING:
    from numpy.typing import NDArray

    from nbubble.fem import Field

    from .solver import SolveReport


@dataclass(frozen=True)
class EnergyBracket:
    m_d: float
    upper: float  # pi d

    @property
    def lower_margin(self) -> float:
        return self.m_d

    @property
    def upper_margin(self) -> float:
        return self.upper - self.m_d

    @property
    def passed(self) -> bool:
        return self.lower_margin > 0.0 and self.upper_margin > 0.0


def energy_bracket_check(report: SolveReport) -> EnergyBracket:
    """0 < m_d < pi d."""
    return EnergyBracket(m_d=report.m_d, upper=float(np.pi * report.d))


@dataclass(frozen=True)
class LocalMaxima:
    nodes: NDArray[np.int64]
    locations: NDArray[np.float64]

    @property
    def count(self) -> int:
        return len(self.nodes)


def count_local_maxima(u: Field, threshold: float | None = None) -> LocalMaxima:
    """Nodes strictly above every mesh neighbour and at least threshold * max(u)."""
    threshold = settings.LOCAL_MAX_THRESHOLD if threshold is None else threshold
    values = u.values
    edges = u.mesh.edges
    neighbour_max = np.full(len(values), -np.inf)
    np.maximum.at(neighbour_max, edges[:, 0], values[edges[:, 1]])
    np.maximum.at(neighbour_max, edges[:, 1], values[edges[:, 0]])
    strict = (values > neighbour_max) & (values >= threshold * u.max)
    nodes = np.flatnonzero(strict)
    return LocalMaxima(nodes=nodes, locations=u.mesh.nodes[nodes])
