from __future__ import annotations

import logging
from typing import TYPE_CHECKING
from unittest.mock import MagicMock, patch

import numpy as np
import pytest
from click.testing import CliRunner
from nbubble.asymptotics import RayLevel, SweepEntry, SweepResult
from nbubble.asymptotics.concentration import ConcentrationMetrics, EnergyBudget
from nbubble.fem import Field
from nbubble.geometry import Domain, Mesh, build_disk_mesh
from nbubble.radial import cached_ground_state
from nbubble.settings import Settings

from tests.factories import SolveReportFactory

if TYPE_CHECKING:
    from collections.abc import Generator

    from nbubble.radial import RadialProfile

logger = logging.getLogger(__name__)


class Factories:
    solve_report = SolveReportFactory


@pytest.fixture()
def factories() -> Factories:
    return Factories()


@pytest.fixture()
def settings() -> Settings:
    return Settings()


@pytest.fixture(scope="session")
def disk() -> Domain:
    return Domain.disk()


@pytest.fixture(scope="session")
def ellipse() -> Domain:
    return Domain.ellipse(2.0, 1.0)


@pytest.fixture(scope="session")
def coarse_mesh() -> Mesh:
    return build_disk_mesh(1.0, 0.1)


@pytest.fixture(scope="session")
def ground_state() -> RadialProfile:
    return cached_ground_state()


@pytest.fixture()
def bump(coarse_mesh: Mesh) -> Field:
    """A positive bump centered on the boundary point (0, 1)."""
    return Field.from_function(
        coarse_mesh,
        lambda x: np.exp(-np.sum((x - np.array([0.0, 1.0])) ** 2, axis=-1) / 0.1),
    )


@pytest.fixture()
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture()
def cli() -> Generator[MagicMock, None, None]:
    with patch("nbubble.cli.configure_logging") as configure_logging:
        mock = MagicMock()
        mock.configure_logging = configure_logging
        yield mock


def fake_sweep_entry(d: float) -> SweepEntry:
    """A sweep entry around the factory spike, with made-up levels and diagnostics."""
    report = SolveReportFactory.create(d=d)
    s = np.linspace(-2.0, 2.0, 9)
    return SweepEntry(
        d=d,
        report=report,
        level=RayLevel(M=0.6 * np.pi * d, t0=1.01, t_golden=1.01),
        concentration=ConcentrationMetrics(
            d=d,
            dist_over_sqrtd=0.0,
            profile_sup_err=0.1,
            mu1=float("nan"),
            patch_radius=2.0,
        ),
        budget=EnergyBudget(5.0),
        trace_s=s,
        trace_u=np.exp(-np.abs(s)),
        trace_w=np.exp(-np.abs(s)),
    )


@pytest.fixture()
def sweep_result() -> SweepResult:
    return SweepResult(
        entries=[fake_sweep_entry(0.1), fake_sweep_entry(0.05)],
        half_I=2.0,
        gamma=0.5,
        curvature=1.0,
    )
