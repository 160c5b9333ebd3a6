from __future__ import annotations

from ._version import __version__
from .cli import main

__all__ = [
    "__version__",
    "main",
]
