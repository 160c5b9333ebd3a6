from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest
from nbubble.asymptotics import parse_sweep, run_sweep, sweep_mesh_policy
from nbubble.errors import InvalidParameterError
from nbubble.ground_state import energy_bracket_check

from tests.fixtures import fake_sweep_entry

if TYPE_CHECKING:
    from nbubble.asymptotics import SweepResult
    from nbubble.geometry import Domain
    from nbubble.radial import RadialProfile


D_LIST = [0.1, 0.05, 0.025, 0.0125]


@pytest.fixture(scope="module")
def disk_sweep(disk: Domain, ground_state: RadialProfile) -> SweepResult:
    return run_sweep(disk, D_LIST, ground_state)


class TestParseSweep:
    def test_sorted_descending(self) -> None:
        assert parse_sweep([0.01, 0.1, 0.05]).tolist() == [0.1, 0.05, 0.01]

    @pytest.mark.parametrize(
        "d_list",
        [[], [0.1, -0.1], [0.0], [0.1, 0.1], [float("inf")], [float("nan"), 0.1]],
    )
    def test_invalid(self, d_list: list[float]) -> None:
        with pytest.raises(InvalidParameterError):
            parse_sweep(d_list)


class TestMeshPolicy:
    def test_local_size(self, disk: Domain) -> None:
        policy = sweep_mesh_policy(disk, (0.0, 1.0))
        mesh = policy(0.01)
        assert mesh.local_h((0.0, 1.0), 0.05) <= 1.5 * np.sqrt(0.01) / 24
        assert mesh.domain is disk

    def test_levels_capped_by_radius(self, disk: Domain) -> None:
        mesh = sweep_mesh_policy(disk, (0.0, 1.0))(1.0)
        assert mesh.h_max <= 1.5


class TestSweepResult:
    def test_rows(self) -> None:
        entry = fake_sweep_entry(0.05)
        row = entry.to_row()
        assert row["d"] == 0.05
        assert row["M_test"] == pytest.approx(0.6 * np.pi * 0.05)
        assert row["maxima_count"] == -1
        assert np.isnan(row["refl_residual"])
        assert np.isnan(row["mu1"])

    def test_summary_without_fit(self, sweep_result: SweepResult) -> None:
        result = sweep_result
        summary = result.summary()
        assert result.d_list.tolist() == [0.1, 0.05]
        assert summary["expected_gamma_coeff"] == 0.5
        assert np.isnan(summary["fitted_gamma_coeff"])
        assert summary["m_d_over_d"] == pytest.approx([0.5 * np.pi, 0.5 * np.pi])
        assert summary["m_d_over_sqrt_d"][1] == pytest.approx(0.5 * np.pi * np.sqrt(0.05))


@pytest.mark.slow
class TestRunSweep:
    def test_short_sweep(self, disk: Domain, ground_state: RadialProfile) -> None:
        result = run_sweep(disk, [0.05, 0.1], ground_state, workers=1)
        assert result.d_list.tolist() == [0.1, 0.05]
        assert result.expansion is None
        for entry in result.entries:
            row = entry.to_row()
            assert 0.0 < row["m_d"] <= row["M_test"] * (1 + 1e-3)
            assert entry.symmetry is not None
            assert row["maxima_count"] == 1
            assert entry.trace_s.shape == entry.trace_u.shape == entry.trace_w.shape


@pytest.mark.slow
class TestDiskSweep:
    def test_energy_bracket(self, disk_sweep: SweepResult) -> None:
        assert disk_sweep.d_list.tolist() == D_LIST
        for entry in disk_sweep.entries:
            assert energy_bracket_check(entry.report).passed
            assert 0.0 < entry.report.m_d < np.pi * entry.d

    def test_levels_approach_half_energy(self, disk_sweep: SweepResult) -> None:
        half_I = disk_sweep.half_I
        gap = np.abs(disk_sweep.m_d / disk_sweep.d_list - half_I)
        assert np.all(np.diff(gap) < 0)
        assert gap[-1] <= 0.05 * 2 * half_I
        for entry in disk_sweep.entries:
            assert entry.level.M >= entry.report.m_d - 1e-8

    def test_boundary_concentration(self, disk_sweep: SweepResult) -> None:
        sup_err = np.array([entry.concentration.profile_sup_err for entry in disk_sweep.entries])
        assert np.all(np.diff(sup_err) < 0)
        assert sup_err[-1] < 0.1
        for entry in disk_sweep.entries:
            assert entry.report.peak_on_boundary
            assert entry.concentration.mu1 > 0.3
            assert entry.budget.value < 4 * np.pi

    def test_symmetry(self, disk_sweep: SweepResult) -> None:
        for entry in disk_sweep.entries[:2]:
            symmetry = entry.symmetry
            assert symmetry is not None
            assert symmetry.maxima_count == 1
            assert symmetry.reflection_residual <= 1e-2
            assert symmetry.monotone

    def test_expansion(self, disk_sweep: SweepResult) -> None:
        expansion = disk_sweep.expansion
        assert expansion is not None
        assert np.allclose(expansion.m_d, disk_sweep.m_d)
        ratio = expansion.fitted_gamma_coeff / expansion.expected_gamma_coeff
        assert 0.5 <= ratio <= 2.0
        assert np.all(np.diff(np.abs(expansion.t0_shift)) < 0)
        summary = disk_sweep.summary()
        assert summary["fitted_gamma_coeff"] == expansion.fitted_gamma_coeff
        assert abs(summary["t0_log_slope"] - 0.5) <= 0.15
