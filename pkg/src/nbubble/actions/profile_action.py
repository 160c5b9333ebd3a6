from __future__ import annotations

import logging
from typing import TypedDict

from nbubble.persistence import write_json, write_profile
from nbubble.radial import (
    energy_I,
    gamma_constant,
    half_plane_moments,
    pohozaev_checks,
    shoot_ground_state,
)

from .base_action import BaseAction

logger = logging.getLogger(__name__)


class ProfileSummaryDict(TypedDict):
    amplitude: float
    I_w: float
    gamma: float
    theta: float


class ProfileAction(BaseAction):
    def execute(self) -> ProfileSummaryDict:
        profile = shoot_ground_state(self.config.tol, self.config.r_max)
        write_profile(self.path("profile.profile"), profile)

        residuals = pohozaev_checks(profile)
        moments = half_plane_moments(profile)
        summary: ProfileSummaryDict = {
            "amplitude": profile.amplitude,
            "I_w": energy_I(profile),
            "gamma": gamma_constant(profile),
            "theta": profile.theta,
        }
        write_json(
            self.path("profile.json"),
            {
                **summary,
                **profile.to_dict(),
                "moments": moments.to_dict(),
                "identities": residuals.to_dict(),
            },
        )
        return summary
