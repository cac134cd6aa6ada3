"""SVG figures for benchmark runs.  Output is byte-stable for equal inputs."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .evaluation import RunRecord  # noqa: E402

STYLE = {"vanilla": ("C0", "-"), "vanilla-lazy": ("C3", ":"), "ps": ("C1", "--"), "ps-domain": ("C2", "-.")}


def _save(fig, path: Union[str, Path]) -> None:
    with matplotlib.rc_context({"svg.hashsalt": "pscfr", "svg.fonttype": "path"}):
        fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def plot_convergence(record: RunRecord, path: Union[str, Path], title: str = "") -> None:
    """Exploitability of the average policy against cumulative value updates."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    drawn = 0
    for algo in dict.fromkeys(r.algo for r in record.rows):
        rows = [r for r in record.sampled(algo) if r.exploitability > 0]
        if not rows:
            continue
        color, ls = STYLE.get(algo, (None, "-"))
        ax.plot([r.value_updates_cum for r in rows], [r.exploitability for r in rows],
                label=algo, color=color, linestyle=ls, linewidth=1.5)
        drawn += 1
    if not drawn:
        ax.text(0.5, 0.5, "exploitability is zero at every sample", ha="center", va="center",
                transform=ax.transAxes)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("cumulative value updates")
    ax.set_ylabel("exploitability")
    if title:
        ax.set_title(title)
    ax.grid(True, which="major", alpha=0.3)
    if drawn:
        ax.legend()
    fig.tight_layout()
    _save(fig, path)


def _bars(values: Mapping[str, float], path, ylabel: str, title: str) -> None:
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    names = list(values)
    ax.bar(names, [values[n] for n in names], color=[STYLE.get(n, ("C7", "-"))[0] for n in names])
    ax.set_yscale("log")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    for k, n in enumerate(names):
        ax.annotate(f"{values[n]:.4g}", (k, values[n]), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def plot_updates_per_iteration(updates: Mapping[str, float], path, title: str = "") -> None:
    _bars(updates, path, "value updates per iteration", title)


def plot_iteration_time(ms: Mapping[str, float], path, title: str = "") -> None:
    _bars(ms, path, "milliseconds per iteration", title)
