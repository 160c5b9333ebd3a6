from __future__ import annotations

from enum import Enum, auto
from typing import Any


class StopReason(Enum):
    """Why a radial trajectory stopped."""

    def __new__(cls, *args: Any, **kwargs: Any) -> Any:
        """Give each enum value an increasing numerical value starting at 1."""
        value = len(cls.__members__) + 1
        obj = object.__new__(cls)
        obj._value_ = value
        return obj

    def __init__(self, title: str) -> None:
        self.title = title

    def __str__(self) -> str:
        return self.title

    DECAYED = "decayed"
    CROSSED_ZERO = "crossed-zero"
    TURNED_UP = "turned-up"
    REACHED_RMAX = "reached-rmax"


class DomainKind(Enum):
    UNIT_DISK = "unit-disk"
    GENERIC_CURVE = "generic-curve"

    def __str__(self) -> str:
        return self.value


class InitPreset(Enum):
    CURVATURE_BUMP = "curvature-bump"
    CONSTANT = "constant"
    CUSTOM = "custom"

    def __str__(self) -> str:
        return self.value


class Growth(Enum):
    BOUNDED = "bounded"
    DIVERGING = "diverging"
    UNDECIDED = "undecided"

    def __str__(self) -> str:
        return self.value


class Command(Enum):
    PROFILE = auto()
    SOLVE = auto()
    SWEEP = auto()
    MOSER = auto()

    def __str__(self) -> str:
        return self.name.lower()
