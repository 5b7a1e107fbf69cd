"""Figures written next to the delimited report files."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .padic import INFINITY  # noqa: E402
from .polygon import NewtonPolygon, PolygonPoint  # noqa: E402


def plot_polygon(
    points: Sequence[PolygonPoint], np: NewtonPolygon, path: str | Path, title: str = ""
) -> Path:
    """Scatter the points (i, v(g_i)) and draw the lower hull through them."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    finite = [pt for pt in points if pt.val != INFINITY]
    vanishing = [pt.index for pt in points if pt.val == INFINITY]
    ax.scatter([pt.index for pt in finite], [float(pt.val) for pt in finite],
               s=18, color="0.45", zorder=2, label="coefficients")
    ax.plot([v.index for v in np.vertices], [float(v.val) for v in np.vertices],
            color="C0", lw=1.6, marker="o", ms=4, zorder=3, label="Newton polygon")
    if vanishing:
        ymin = min((float(pt.val) for pt in finite), default=0.0)
        ax.scatter(vanishing, [ymin] * len(vanishing), marker="x", color="C3",
                   zorder=2, label="vanishing")
    for (a, b), (slope, _) in zip(zip(np.vertices, np.vertices[1:]), np.slopes):
        ax.annotate(str(slope), ((a.index + b.index) / 2, (float(a.val) + float(b.val)) / 2),
                    textcoords="offset points", xytext=(4, -10), fontsize=8, color="C0")
    ax.set_xlabel("i")
    ax.set_ylabel("valuation")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_slopes_by_weight(
    slopes: Mapping[int, Sequence[Fraction]], path: str | Path, title: str = "",
    observed: Mapping[int, Sequence[Fraction]] | None = None,
) -> Path:
    """Predicted slopes against weight, with observed slopes overlaid if given."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [k for k, v in slopes.items() for _ in v]
    ys = [float(s) for v in slopes.values() for s in v]
    ax.scatter(xs, ys, s=22, marker="_", color="C0", label="ghost")
    if observed:
        xo = [k for k, v in observed.items() for _ in v]
        yo = [float(s) for v in observed.values() for s in v]
        ax.scatter(xo, yo, s=14, facecolors="none", edgecolors="C3", label="classical")
    ax.set_xlabel("weight k")
    ax.set_ylabel("slope")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
