"""Static figures for pdmedian benchmark results.

Consumes the CSV files the benchmark harness writes; the harness package
itself is never imported. See ``results`` for the pinned file format,
``figure`` for drawing, ``cli`` for the ``pdmedian-plot`` script.
"""

from .cli import PlotSpec, build_parser, main, render
from .figure import PANEL_ORDER, format_table, make_figure, save_figure
from .results import (
    EXPECTED_HEADER,
    CellStat,
    ResultRow,
    aggregate,
    read_rows,
)

__all__ = [
    "EXPECTED_HEADER",
    "PANEL_ORDER",
    "CellStat",
    "ResultRow",
    "PlotSpec",
    "aggregate",
    "build_parser",
    "format_table",
    "main",
    "make_figure",
    "read_rows",
    "render",
    "save_figure",
]
