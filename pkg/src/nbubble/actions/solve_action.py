from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from nbubble.asymptotics import bump_chart
from nbubble.enums import InitPreset
from nbubble.errors import ConvergenceError, InvalidParameterError
from nbubble.geometry import build_mesh
from nbubble.ground_state import energy_bracket_check, solve_ground_state
from nbubble.persistence import write_json, write_solution
from nbubble.radial import cached_ground_state
from nbubble.settings import settings

from .base_action import BaseAction

if TYPE_CHECKING:
    from nbubble.ground_state import SolveReportDict

logger = logging.getLogger(__name__)


class SolveAction(BaseAction):
    def execute(self) -> SolveReportDict:
        config = self.config
        if config.d is None or not config.d > 0:
            raise InvalidParameterError(f"Diffusion d must be positive, got {config.d}.")
        if config.init is InitPreset.CUSTOM:
            raise InvalidParameterError("The custom initial field is only available from Python.")
        domain = config.build_domain()
        h = settings.SOLVE_H if config.h is None else config.h
        refine_point = bump_chart(domain).P if config.refine_levels else None
        mesh = build_mesh(domain, h, refine_point, config.refine_levels)

        profile = None
        if config.init is InitPreset.CURVATURE_BUMP:
            profile = cached_ground_state(config.tol, config.r_max)
        report = solve_ground_state(config.d, mesh, config.init, profile=profile)

        write_solution(self.path("solution"), report.u)
        payload = report.to_dict()
        write_json(self.path("report.json"), payload)

        bracket = energy_bracket_check(report)
        if not bracket.passed:
            logger.warning(
                "warning: m_d=%.12g falls outside (0, pi d) = (0, %.12g)",
                report.m_d,
                bracket.upper,
            )
        if not report.converged:
            raise ConvergenceError(report.iterations, report.grad_norm)
        return payload
