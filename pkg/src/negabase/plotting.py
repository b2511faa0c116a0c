"""CSV and figure output for point sets on the real line."""

from __future__ import annotations

import csv
import os

from .dwords import format_expansion
from .qfield import to_decimal


def precision() -> int:
    return int(os.environ.get("NEGABASE_PRECISION", "30"))


def write_points_csv(s, path) -> None:
    """One row per point: exact ``a, b, d``, a decimal rendering and the digits."""
    digits = precision()
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["a", "b", "d", "decimal", "expansion"])
        for x, e in zip(s.points, s.expansions):
            sign = "-" if s.sign == "pos" and x.sign() < 0 else ""
            out.writerow([x.a, x.b, x.d, str(to_decimal(x, digits)), sign + format_expansion(e, comma=s.base.alphabet_max_neg > 9)])


def plot_points(s, path, title=None) -> None:
    """Draw the points on a line; gaps are coloured by length.

    The file format follows the extension of ``path`` (svg, png, pdf).
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [float(x) for x in s.points]
    fig, ax = plt.subplots(figsize=(10, 2.2))
    ax.axhline(0, color="0.6", lw=0.8, zorder=1)
    lengths = sorted({round(b - a, 9) for a, b in zip(xs, xs[1:])})
    palette = plt.get_cmap("tab10")
    for a, b in zip(xs, xs[1:]):
        idx = lengths.index(round(b - a, 9))
        ax.plot([a, b], [0, 0], color=palette(idx % 10), lw=3, solid_capstyle="butt", zorder=2)
    ax.plot(xs, [0] * len(xs), "|", color="k", ms=14, zorder=3)
    if len(xs) <= 40:
        for x, e in zip(xs, s.expansions):
            ax.annotate(format_expansion(e), (x, 0), xytext=(0, -18), textcoords="offset points",
                        ha="center", fontsize=7, rotation=90, va="top")
    handles = [plt.Line2D([], [], color=palette(i % 10), lw=3, label=f"gap {g:.6g}")
               for i, g in enumerate(lengths)]
    if handles:
        ax.legend(handles=handles, loc="upper left", fontsize=8, frameon=False, ncol=len(handles))
    ax.set_yticks([])
    for side in ("left", "right", "top"):
        ax.spines[side].set_visible(False)
    ax.set_ylim(-1, 1)
    ax.set_title(title or f"integers in base {'-' if s.sign == 'neg' else ''}beta, beta: {s.base}",
                 fontsize=10)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
