"""Figures for benchmark output."""

from __future__ import annotations

import statistics

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_bench(rows, path, title: str | None = None) -> None:
    """Median milliseconds against edge count, one log-log line per family."""
    series: dict[str, dict[int, list[float]]] = {}
    for r in rows:
        series.setdefault(r.family, {}).setdefault(r.edges, []).append(r.ms)
    fig, ax = plt.subplots(figsize=(6, 4))
    for family, points in sorted(series.items()):
        xs = sorted(points)
        ax.plot(xs, [statistics.median(points[x]) for x in xs], marker="o", label=family)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("edges")
    ax.set_ylabel("median time (ms)")
    if title:
        ax.set_title(title)
    ax.legend(fontsize="small")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
