"""Command line entry point for rendering benchmark result figures."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .figure import format_table, make_figure, save_figure
from .results import CellStat, aggregate, read_rows

__all__ = ["PlotSpec", "render", "build_parser", "main"]


@dataclass(frozen=True)
class PlotSpec:
    """What to read and where the image goes."""

    csv_path: str
    out_path: str


def render(spec: PlotSpec) -> list[CellStat]:
    """Read, aggregate, draw, save; prints the recomputed summary table.

    Returns the cell statistics so callers can check them against other
    records of the same run.
    """
    rows = read_rows(spec.csv_path)
    cells = aggregate(rows)
    fig = make_figure(cells)
    save_figure(fig, spec.out_path)
    print(format_table(cells))
    return cells


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdmedian-plot",
        description="Render a pdmedian-bench results CSV as an "
                    "error-vs-dimension panel figure.")
    parser.add_argument("--in", dest="csv_in", required=True,
                        help="results CSV written by pdmedian-bench")
    parser.add_argument("--out", dest="out", required=True,
                        help="image path; format follows the extension")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        render(PlotSpec(args.csv_in, args.out))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0
