from __future__ import annotations

import logging
from typing import TypedDict

from nbubble.moser import sharpness_sweep
from nbubble.persistence import write_json, write_moser_csv

from .base_action import BaseAction

logger = logging.getLogger(__name__)


class GrowthDict(TypedDict):
    alpha: float
    classification: str
    slope: float
    r_squared: float


class MoserSummaryDict(TypedDict):
    delta: float
    rows: list[GrowthDict]


class MoserAction(BaseAction):
    def execute(self) -> MoserSummaryDict:
        config = self.config
        table = sharpness_sweep(config.alphas, config.eps_list, config.delta)
        write_moser_csv(self.path("moser.csv"), table)
        summary: MoserSummaryDict = {
            "delta": config.delta,
            "rows": [
                {
                    "alpha": float(alpha),
                    "classification": str(growth),
                    "slope": float(slope),
                    "r_squared": float(r2),
                }
                for alpha, growth, slope, r2 in zip(
                    table.alphas,
                    table.classifications,
                    table.slopes,
                    table.r_squared,
                    strict=True,
                )
            ],
        }
        write_json(self.path("moser.json"), summary)
        return summary
