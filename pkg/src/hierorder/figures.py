"""Matplotlib figures for the CLI report path.

Uses the Agg backend so nothing needs a display; every function writes one
file and returns its path.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _style(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(axis="both", labelsize=8, width=0.8, length=3)
    ax.grid(alpha=0.25, linewidth=0.6)


def plot_convergence(ns: Sequence[int], ratios: Sequence[float], path, *, label: str = "") -> Path:
    """log-log plot of |ratio - 1| against n."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(4.5, 3.0), dpi=150)
    pts = [(n, abs(r - 1.0)) for n, r in zip(ns, ratios) if r is not None and r != 1.0]
    if pts:
        xs, ys = zip(*pts)
        ax.loglog(xs, ys, marker="o", markersize=3, linewidth=1.0, label=label or None)
    ax.set_xlabel("n", fontsize=9)
    ax.set_ylabel("|estimate / exact - 1|", fontsize=9)
    if label:
        ax.legend(fontsize=8, frameon=False)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_rank_distribution(dist, path, *, title: str = "") -> Path:
    """Bar chart of P(rank = r) with the mean marked."""
    path = Path(path)
    ranks = list(range(1, dist.n + 1))
    fig, ax = plt.subplots(figsize=(4.5, 3.0), dpi=150)
    ax.bar(ranks, [float(p) for p in dist.probs], width=0.8, color="0.35")
    ax.axvline(float(dist.mean), color="C3", linewidth=1.0, linestyle="--", label=f"mean {float(dist.mean):.4g}")
    ax.set_xlabel("rank", fontsize=9)
    ax.set_ylabel("probability", fontsize=9)
    if title:
        ax.set_title(title, fontsize=9)
    ax.legend(fontsize=8, frameon=False)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
