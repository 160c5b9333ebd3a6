from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import TYPE_CHECKING, Any, TypedDict

from .enums import Command, InitPreset
from .errors import FormatError, InvalidParameterError
from .geometry import Domain
from .settings import settings

if TYPE_CHECKING:
    from typing import Self

logger = logging.getLogger(__name__)

CONFIG_NAME = "config.json"
DOMAINS = ("disk", "ellipse")


class RunConfigDict(TypedDict):
    command: str
    out: str
    seed: int
    domain: str
    radius: float
    semi_axes: list[float]
    d: float | None
    d_list: list[float]
    h: float | None
    refine_levels: int
    init: str
    tol: float
    r_max: float
    alphas: list[float]
    eps_list: list[float]
    delta: float
    plots: bool


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation depends on, echoed to config.json."""

    command: Command
    out: str
    seed: int = 0  # for random test fields only
    domain: str = "disk"
    radius: float = 1.0
    semi_axes: tuple[float, float] = (2.0, 1.0)
    d: float | None = None
    d_list: tuple[float, ...] = ()
    h: float | None = None
    refine_levels: int = 0
    init: InitPreset = InitPreset.CURVATURE_BUMP
    tol: float = 1e-10
    r_max: float = 25.0
    alphas: tuple[float, ...] = ()
    eps_list: tuple[float, ...] = ()
    delta: float = settings.MOSER_DELTA
    plots: bool = False

    def __post_init__(self) -> None:
        if self.domain not in DOMAINS:
            raise InvalidParameterError(
                f"Unknown domain {self.domain!r}, expected one of {', '.join(DOMAINS)}.",
            )

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    def build_domain(self) -> Domain:
        if self.domain == "ellipse":
            a, b = self.semi_axes
            return Domain.ellipse(a, b)
        return Domain.disk(self.radius)

    def to_dict(self) -> RunConfigDict:
        data = asdict(self)
        data["command"] = str(self.command)
        data["init"] = str(self.init)
        for name in ("semi_axes", "d_list", "alphas", "eps_list"):
            data[name] = list(data[name])
        return RunConfigDict(**data)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Self:
        known = {f.name for f in fields(cls)}
        if unknown := sorted(set(data) - known):
            raise FormatError("config", 1, f"unknown keys: {', '.join(unknown)}")
        try:
            values = dict(data)
            values["command"] = Command[str(data["command"]).upper()]
            if "init" in data:
                values["init"] = InitPreset(data["init"])
            for name in ("semi_axes", "d_list", "alphas", "eps_list"):
                if name in data:
                    values[name] = tuple(float(v) for v in data[name])
            return cls(**values)
        except (KeyError, ValueError, TypeError) as ex:
            raise FormatError("config", 1, f"invalid config: {ex}") from ex

    def with_out(self, out: str | Path) -> Self:
        return replace(self, out=str(out))


def default_out(command: Command) -> str:
    return str(Path(settings.OUTPUT_ROOT) / str(command))
