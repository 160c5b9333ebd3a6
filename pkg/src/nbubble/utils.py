from __future__ import annotations

import logging
import math
from contextlib import AbstractContextManager
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from types import TracebackType

logger = logging.getLogger(__name__)


def log_warning(log: str, exec_info: bool = False, **kwargs: Any) -> None:
    message = f"warning: nbubble: {log}"
    logger.warning(message, kwargs, exc_info=exec_info)


def log_info(log: str, exec_info: bool = False, **kwargs: Any) -> None:
    message = f"info: nbubble: {log}"
    logger.info(message, kwargs, exc_info=exec_info)


def finite_or_none(value: float) -> float | None:
    """JSON has no NaN; report missing numbers as null."""
    return None if math.isnan(value) or math.isinf(value) else value


def jsonable(obj: Any) -> Any:
    """Plain JSON types for nested report dicts, with non-finite floats as null."""
    if isinstance(obj, dict):
        return {str(key): jsonable(value) for key, value in obj.items()}
    if isinstance(obj, list | tuple):
        return [jsonable(value) for value in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int) and not isinstance(obj, bool):
        return int(obj)
    if hasattr(obj, "tolist"):
        return jsonable(obj.tolist())
    return finite_or_none(float(obj))


class suppress(AbstractContextManager[None]):
    """
    Suppresses any exceptions from the given set.

    Logs the given message whenever an exception is suppressed. String interpolation
    parameters should be embedded into the log message as `%(name)s` and provided
    corresponding values via keyword argument. For example:

        with suppress(DegenerateAxisError, log="no symmetry axis at d=%(d)s", d=d):
            ...

    Note that you should NOT use `return` within the context of `suppress()`, static
    analysis tools will not understand that code following the context is reachable.
    """

    __slots__ = ("_exceptions", "_log", "_kwargs")

    def __init__(self, *exceptions: type[Exception], log: str, **kwargs: Any) -> None:
        self._exceptions = exceptions
        self._log = log
        self._kwargs = kwargs

    def __enter__(self) -> None:
        pass

    def __exit__(
        self,
        exctype: type[BaseException] | None,
        excinst: BaseException | None,
        exctb: TracebackType | None,
    ) -> bool:
        if captured := exctype is not None and issubclass(exctype, self._exceptions):
            log_warning(self._log, exec_info=True, **self._kwargs)
        return captured
