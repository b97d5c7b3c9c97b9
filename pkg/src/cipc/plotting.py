"""Figures for experiment output, written to files next to the CSV/JSON."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.figsize": (5.0, 3.4),
    "savefig.dpi": 150,
}


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_sweep(points, path):
    """Mean ``2**k`` against true M, with the ideal ``y = M`` line."""
    ms = [p[0] for p in points]
    indicator = [p[2] for p in points]
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.plot(ms, ms, color="0.6", linestyle="--", linewidth=1, label="true M")
        ax.plot(ms, indicator, marker="o", markersize=3, label=r"mean $2^k$")
        ax.set_xlabel("distinct records M")
        ax.set_ylabel("estimate")
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_table(rows, path):
    """Percent error of both estimators for every row of a table run."""
    usable = [r for r in rows if r.pc is not None and r.cipc is not None]
    ms = [r.M for r in usable]
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ax.plot(ms, [r.pc.percent_error for r in usable], marker="o", markersize=3, label="PC")
        ax.plot(ms, [r.cipc.percent_error for r in usable], marker="s", markersize=3, label="CIPC")
        ax.set_xlabel("distinct records M")
        ax.set_ylabel("percent error (%)")
        ax.set_ylim(bottom=0)
        ax.legend(frameon=False)
        return _save(fig, path)
