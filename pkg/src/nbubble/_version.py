from __future__ import annotations

from os.path import realpath
from pathlib import Path
from typing import TYPE_CHECKING

import dunamai as _dunamai

if TYPE_CHECKING:
    from collections.abc import Callable

PACKAGE = "nbubble"
UNKNOWN = "unknown"


def _usable(version: str | None) -> str | None:
    return version if version is not None and version != "0.0.0" else None


def version_from_git() -> str | None:
    try:
        choice = _dunamai.Version.from_any_vcs
        return _usable(_dunamai.get_version(PACKAGE, first_choice=choice).serialize())
    except Exception:
        return None


def version_from_package() -> str | None:
    try:
        choice = _dunamai.Version.from_any_vcs
        return _usable(_dunamai.get_version(PACKAGE, third_choice=choice).serialize())
    except Exception:
        return None


def version_from_toml() -> str | None:
    import toml

    try:
        repo_root = Path(realpath(__file__)).parent.parent.parent
        pyproject = toml.load(repo_root / "pyproject.toml")
    except Exception:
        return None
    return _usable(pyproject.get("tool", {}).get("poetry", {}).get("version"))


# Git gives development versions like 1.0.1.post2.dev0+1d15510, installed metadata is
# next best, and a source checkout without git still has pyproject.toml.
STRATEGIES: tuple[Callable[[], str | None], ...] = (
    version_from_git,
    version_from_package,
    version_from_toml,
)


def detect_version() -> str:
    for strategy in STRATEGIES:
        if version := strategy():
            return version
    return UNKNOWN


__version__ = detect_version()
