"""Figure assembly: error against dimension, one panel per distribution.

The backend is forced to Agg before pyplot loads; everything here renders
to a static image and never touches an interactive display.
"""

from __future__ import annotations

import warnings

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .results import CellStat

__all__ = ["PANEL_ORDER", "make_figure", "save_figure", "format_table"]

# canonical panel order; distributions beyond these sort after, by name
PANEL_ORDER = ("gaussian", "contaminated", "cauchy")

_SERIES_ORDER = ("sample_mean", "nonprivate_pd", "private_pd")

_LABELS = {
    "sample_mean": "sample mean",
    "nonprivate_pd": "PD median",
    "private_pd": "private PD median",
}

_STYLES = {
    "sample_mean": ("tab:gray", "o", "--"),
    "nonprivate_pd": ("tab:blue", "s", "-"),
    "private_pd": ("tab:red", "^", "-"),
}
_FALLBACK_STYLE = ("tab:green", "D", ":")


def _ordered(values, preferred) -> list:
    seen = list(dict.fromkeys(values))
    front = [v for v in preferred if v in seen]
    return front + sorted(v for v in seen if v not in preferred)


def make_figure(cells: list[CellStat]):
    """Build the panel figure and return the matplotlib Figure.

    One panel per distribution, one series per estimator, dimension on the
    x axis. Points whose abstention rate is positive get it annotated next
    to the marker. Cells where every rep abstained have no error to plot;
    they are dropped from their series with a warning rather than breaking
    the line. The y axis goes logarithmic when every plotted value allows
    it.
    """
    if not cells:
        raise ValueError("no cells to plot")
    dists = _ordered([c.distribution for c in cells], PANEL_ORDER)
    ests = _ordered([c.estimator for c in cells], _SERIES_ORDER)
    by_key = {(c.distribution, c.estimator, c.d): c for c in cells}
    log_y = all(c.ermse is None or c.ermse > 0 for c in cells)

    fig, axes = plt.subplots(
        1, len(dists), figsize=(4.2 * len(dists), 3.6), squeeze=False)
    for ax, dist in zip(axes[0], dists):
        dims = sorted({c.d for c in cells if c.distribution == dist})
        for est in ests:
            xs, ys, rates = [], [], []
            for d in dims:
                cell = by_key.get((dist, est, d))
                if cell is None:
                    continue
                if cell.ermse is None:
                    warnings.warn(
                        f"{est}/{dist} d={d}: all reps abstained; "
                        "point omitted", stacklevel=2)
                    continue
                xs.append(d)
                ys.append(cell.ermse)
                rates.append(cell.abstain_rate)
            if not xs:
                continue
            color, marker, style = _STYLES.get(est, _FALLBACK_STYLE)
            ax.plot(xs, ys, marker=marker, linestyle=style, color=color,
                    label=_LABELS.get(est, est))
            for x, y, rate in zip(xs, ys, rates):
                if rate > 0:
                    ax.annotate(f"{rate:.0%} abstain", (x, y),
                                textcoords="offset points", xytext=(0, 7),
                                fontsize=7, ha="center", color=color)
        if log_y:
            ax.set_yscale("log")
        ax.set_title(dist)
        ax.set_xlabel("dimension")
        ax.set_xticks(dims)
        ax.grid(True, alpha=0.3)
    axes[0][0].set_ylabel("ERMSE")
    for ax in axes[0]:
        if ax.get_legend_handles_labels()[0]:
            ax.legend(fontsize=8)
            break
    fig.tight_layout()
    return fig


def save_figure(fig, path) -> None:
    """Write the figure to ``path`` (format from the extension) and close it."""
    fig.savefig(path, dpi=150)
    plt.close(fig)


def format_table(cells: list[CellStat]) -> str:
    """Fixed-width text table of the recomputed cell statistics."""
    lines = [f"{'distribution':<14}  {'d':>3}  {'estimator':<14}  "
             f"{'ermse':>12}  {'abstain':>8}  {'released':>9}"]
    for cell in cells:
        ermse = "-" if cell.ermse is None else f"{cell.ermse:.6f}"
        released = f"{cell.n_released}/{cell.n_total}"
        lines.append(
            f"{cell.distribution:<14}  {cell.d:>3}  {cell.estimator:<14}  "
            f"{ermse:>12}  {cell.abstain_rate:>8.2f}  {released:>9}")
    return "\n".join(lines)
