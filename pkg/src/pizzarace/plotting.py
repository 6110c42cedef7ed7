"""Figures for verification and search reports."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def share_histogram(shares: Sequence[Fraction], path, title="Alice's optimal share"):
    """Histogram of shares with the 2/5 and 1/2 reference lines."""
    fig, ax = plt.subplots(figsize=(6, 3.7))
    values = [float(s) for s in shares]
    ax.hist(values, bins=40, color="#4c72b0", edgecolor="white")
    ax.axvline(0.4, color="#c44e52", ls="--", lw=1, label="2/5")
    ax.axvline(0.5, color="0.4", ls=":", lw=1, label="1/2")
    ax.set_xlabel("share")
    ax.set_ylabel("instances")
    ax.set_title(title)
    ax.legend(frameon=False)
    _finish(fig, path)


def min_share_by_n(records, path):
    """Best-known minimum share per piece count, one marker per method."""
    fig, ax = plt.subplots(figsize=(6, 3.7))
    by_method: dict[str, dict[int, float]] = {}
    for r in records:
        if r.min_share is None:
            continue
        best = by_method.setdefault(r.method, {})
        best[r.n] = min(best.get(r.n, 1.0), float(r.min_share))
    for method, points in sorted(by_method.items()):
        ns = sorted(points)
        ax.plot(ns, [points[n] for n in ns], marker="o", label=method)
    ax.axhline(0.4, color="#c44e52", ls="--", lw=1)
    ax.set_xlabel("pieces n")
    ax.set_ylabel("min share found")
    ax.legend(frameon=False)
    _finish(fig, path)
