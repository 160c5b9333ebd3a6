from __future__ import annotations

import os
import sys
from os import getenv


def running_in_pytest() -> bool:  # pragma: no cover
    return bool(getenv("PYTEST_CURRENT_TEST")) or "pytest" in sys.modules


def machine_parallelism() -> int:
    return max(1, os.cpu_count() or 1)


def worker_cap(raw: str | None) -> int:
    """Number of sweep workers allowed by an `NB_THREADS`-style value."""
    if not raw:
        return machine_parallelism()
    try:
        value = int(raw)
    except ValueError:
        return machine_parallelism()
    return max(1, value)
