from __future__ import annotations

import logging
import time
from contextlib import contextmanager
from typing import TYPE_CHECKING, Self

import humanize

from nbubble.config import CONFIG_NAME
from nbubble.errors import NBubbleError
from nbubble.persistence import write_json

if TYPE_CHECKING:
    from collections.abc import Generator, Mapping
    from pathlib import Path

    from nbubble.config import RunConfig

logger = logging.getLogger(__name__)


class BaseAction:
    config: RunConfig
    out_dir: Path

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.out_dir = config.out_dir

    def prepare(self) -> None:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        write_json(self.out_dir / CONFIG_NAME, self.config.to_dict())

    def execute(self) -> Mapping[str, object]:  # pragma: no cover
        raise NotImplementedError

    def path(self, name: str) -> Path:
        return self.out_dir / name

    @classmethod
    @contextmanager
    def create(cls, config: RunConfig) -> Generator[Self, None, None]:
        action = cls(config)
        started = time.monotonic()
        try:
            action.prepare()
            yield action
        except NBubbleError as ex:
            logger.error("error: %s failed: %s", config.command, ex)
            raise
        elapsed = time.monotonic() - started
        logger.info(
            "%s finished in %s, outputs in %s",
            config.command,
            humanize.naturaldelta(elapsed),
            action.out_dir,
        )
