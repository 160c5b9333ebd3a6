from __future__ import annotations

from dataclasses import replace
from typing import TYPE_CHECKING

import numpy as np
from nbubble.asymptotics import ExpansionReport, FittedCoefficients
from nbubble.persistence import plot_levels, plot_overlay

if TYPE_CHECKING:
    from pathlib import Path

    from nbubble.asymptotics import SweepResult


class TestPlots:
    def test_levels(self, tmp_path: Path, sweep_result: SweepResult) -> None:
        path = plot_levels(tmp_path / "levels.svg", sweep_result)
        text = path.read_text(encoding="utf-8")
        assert text.startswith("<?xml")
        assert "<svg" in text
        assert "flat M_test / d" not in text

    def test_levels_with_flat_reference(
        self,
        tmp_path: Path,
        sweep_result: SweepResult,
    ) -> None:
        d = sweep_result.d_list
        expansion = ExpansionReport(
            d_list=d,
            m_d=sweep_result.m_d,
            M_test=1.9 * d,
            t0=np.array([1.01, 1.005]),
            t_golden=np.array([1.01, 1.005]),
            half_I=2.0,
            gamma=0.5,
            curvature=1.0,
            fitted=FittedCoefficients(
                fitted_gamma_coeff=0.5,
                raw_gamma_coeff=0.6,
                fitted_beta=0.1,
                t0_log_slope=0.5,
            ),
            M_flat=1.95 * d,
            t0_flat=np.array([1.0, 1.0]),
        )
        result = replace(sweep_result, expansion=expansion)
        text = plot_levels(tmp_path / "levels.svg", result).read_text(encoding="utf-8")
        assert "flat M_test / d" in text
        assert np.allclose(expansion.t0_shift, [0.01, 0.005])

    def test_overlay(self, tmp_path: Path, sweep_result: SweepResult) -> None:
        path = plot_overlay(tmp_path / "overlay.svg", sweep_result)
        assert path.stat().st_size > 0

    def test_reruns_are_byte_identical(self, tmp_path: Path, sweep_result: SweepResult) -> None:
        first = plot_levels(tmp_path / "a.svg", sweep_result).read_bytes()
        second = plot_levels(tmp_path / "b.svg", sweep_result).read_bytes()
        assert first == second
        first = plot_overlay(tmp_path / "c.svg", sweep_result).read_bytes()
        second = plot_overlay(tmp_path / "d.svg", sweep_result).read_bytes()
        assert first == second
