from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING

import matplotlib as mpl
import numpy as np
from matplotlib.figure import Figure

from nbubble.settings import settings

if TYPE_CHECKING:
    from nbubble.asymptotics import SweepResult

logger = logging.getLogger(__name__)

FIGSIZE = (6.0, 4.0)


def _save(figure: Figure, path: Path | str) -> Path:
    path = Path(path)
    # fixed element ids and no timestamp keep reruns byte-identical
    with mpl.rc_context({"svg.hashsalt": settings.PLOT_HASH_SALT, "svg.fonttype": "path"}):
        figure.savefig(path, format="svg", metadata={"Date": None})
    logger.debug("wrote %s", path)
    return path


def plot_levels(path: Path | str, result: SweepResult) -> Path:
    """m_d / d against d with the limit I(w) / 2."""
    figure = Figure(figsize=FIGSIZE, layout="constrained")
    ax = figure.add_subplot()
    d = result.d_list
    ax.plot(d, result.m_d / d, marker="o", label="m_d / d")
    if result.expansion is not None:
        ax.plot(d, result.expansion.M_test / d, marker="s", linestyle="--", label="M_test / d")
        if result.expansion.M_flat.size:
            ax.plot(d, result.expansion.M_flat / d, linestyle=":", label="flat M_test / d")
    ax.axhline(result.half_I, color="black", linewidth=0.8, label="I(w) / 2")
    ax.axhline(np.pi, color="grey", linewidth=0.8, linestyle=":", label="pi")
    ax.set_xscale("log")
    ax.set_xlabel("d")
    ax.set_ylabel("energy / d")
    ax.grid(visible=True, alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    return _save(figure, path)


def plot_overlay(path: Path | str, result: SweepResult) -> Path:
    """Rescaled boundary traces of every u_d next to the half-spike w(|s|)."""
    figure = Figure(figsize=FIGSIZE, layout="constrained")
    ax = figure.add_subplot()
    for entry in result.entries:
        ax.plot(entry.trace_s, entry.trace_u, linewidth=1.0, label=f"d={entry.d:g}")
    if result.entries:
        last = result.entries[-1]
        ax.plot(last.trace_s, last.trace_w, color="black", linestyle="--", label="w")
    ax.set_xlabel("s")
    ax.set_ylabel("u_d(Phi(sqrt(d) (s, 0)))")
    ax.grid(visible=True, alpha=0.3)
    ax.legend(loc="best", fontsize=8)
    return _save(figure, path)
