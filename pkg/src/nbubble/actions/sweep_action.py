from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from nbubble.asymptotics import parse_sweep, run_sweep
from nbubble.ground_state import energy_bracket_check
from nbubble.persistence import plot_levels, plot_overlay, write_json, write_sweep_csv
from nbubble.radial import cached_ground_state

from .base_action import BaseAction

if TYPE_CHECKING:
    from nbubble.asymptotics.sweep import SummaryDict

logger = logging.getLogger(__name__)


class SweepAction(BaseAction):
    def execute(self) -> SummaryDict:
        config = self.config
        d_list = parse_sweep(config.d_list)
        profile = cached_ground_state(config.tol, config.r_max)
        result = run_sweep(config.build_domain(), d_list.tolist(), profile)

        for entry in result.entries:
            bracket = energy_bracket_check(entry.report)
            if not bracket.passed:
                logger.warning(
                    "warning: d=%g has m_d=%.12g outside (0, %.12g)",
                    entry.d,
                    entry.report.m_d,
                    bracket.upper,
                )
            if not entry.report.converged:
                logger.warning("warning: descent did not converge at d=%g", entry.d)

        write_sweep_csv(self.path("sweep.csv"), result)
        summary = result.summary()
        write_json(self.path("summary.json"), summary)
        if config.plots:
            plot_levels(self.path("levels.svg"), result)
            plot_overlay(self.path("overlay.svg"), result)
        return summary
