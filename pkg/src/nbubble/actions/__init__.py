from __future__ import annotations

from typing import TYPE_CHECKING

from nbubble.enums import Command

from .base_action import BaseAction
from .moser_action import MoserAction
from .profile_action import ProfileAction
from .solve_action import SolveAction
from .sweep_action import SweepAction

if TYPE_CHECKING:
    from collections.abc import Mapping

    from nbubble.config import RunConfig

ACTIONS: dict[Command, type[BaseAction]] = {
    Command.PROFILE: ProfileAction,
    Command.SOLVE: SolveAction,
    Command.SWEEP: SweepAction,
    Command.MOSER: MoserAction,
}


def run_action(config: RunConfig) -> Mapping[str, object]:
    with ACTIONS[config.command].create(config) as action:
        return action.execute()


__all__ = [
    "ACTIONS",
    "BaseAction",
    "MoserAction",
    "ProfileAction",
    "SolveAction",
    "SweepAction",
    "run_action",
]
