"""Reading and aggregating benchmark result tables.

The input is the CSV written by the pdmedian-bench harness. Its header row
is the interface contract between the two packages and is pinned here
verbatim; nothing in this package imports the harness itself. Every
statistic is recomputed from the raw per-rep rows rather than copied out of
the harness's own summary, so the figures double as an independent check of
that summary.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

__all__ = [
    "EXPECTED_HEADER",
    "ResultRow",
    "CellStat",
    "read_rows",
    "aggregate",
]

EXPECTED_HEADER = ("estimator", "distribution", "d", "rep",
                   "released", "sq_error", "wall_ms", "seed")

_BOOL = {"true": True, "false": False}


@dataclass(frozen=True)
class ResultRow:
    """One benchmark repetition as read back from the CSV."""

    estimator: str
    distribution: str
    d: int
    rep: int
    released: bool
    sq_error: float | None


@dataclass(frozen=True)
class CellStat:
    """Aggregate over the reps of one (distribution, dimension, estimator) cell."""

    estimator: str
    distribution: str
    d: int
    n_total: int
    n_released: int
    ermse: float | None

    @property
    def abstain_rate(self) -> float:
        return 1.0 - self.n_released / self.n_total


def _check_header(header: tuple[str, ...]) -> None:
    if header == EXPECTED_HEADER:
        return
    missing = [name for name in EXPECTED_HEADER if name not in header]
    if missing:
        raise ValueError("missing column(s): " + ", ".join(missing))
    extra = [name for name in header if name not in EXPECTED_HEADER]
    if extra:
        raise ValueError("unexpected column(s): " + ", ".join(extra))
    raise ValueError(f"columns out of order: {list(header)}")


def _parse_row(fields: list[str], line: int) -> ResultRow:
    if len(fields) != len(EXPECTED_HEADER):
        raise ValueError(
            f"line {line}: expected {len(EXPECTED_HEADER)} fields, "
            f"got {len(fields)}")
    est, dist, d, rep, released, sq, _wall, _seed = fields
    if released not in _BOOL:
        raise ValueError(
            f"line {line}: released must be true or false, got {released!r}")
    is_released = _BOOL[released]
    if is_released:
        if sq == "":
            raise ValueError(f"line {line}: released row has empty sq_error")
        sq_value = float(sq)
    else:
        # abstentions carry no error; a value here means a corrupted file
        if sq != "":
            raise ValueError(f"line {line}: abstained row carries sq_error")
        sq_value = None
    return ResultRow(est, dist, int(d), int(rep), is_released, sq_value)


def read_rows(path) -> list[ResultRow]:
    """Parse a harness results CSV, enforcing the pinned header."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ValueError("empty file: missing header row")
        _check_header(tuple(header))
        rows = [_parse_row(fields, line)
                for line, fields in enumerate(reader, start=2)]
    if not rows:
        raise ValueError("no data rows")
    return rows


def aggregate(rows: list[ResultRow]) -> list[CellStat]:
    """Group reps into cells and recompute ERMSE and abstention.

    A cell is one (distribution, dimension, estimator) triple; its ERMSE is
    the root mean of the released reps' squared errors, or None when every
    rep abstained. Squared errors are summed in file order within each
    cell, matching the harness's own accumulation, so a clean round trip
    reproduces its summary bit for bit.
    """
    groups: dict[tuple[str, int, str], list[ResultRow]] = {}
    for row in rows:
        key = (row.distribution, row.d, row.estimator)
        groups.setdefault(key, []).append(row)
    cells = []
    for dist, d, est in sorted(groups):
        members = groups[(dist, d, est)]
        sqs = [r.sq_error for r in members if r.released]
        ermse = math.sqrt(sum(sqs) / len(sqs)) if sqs else None
        cells.append(CellStat(est, dist, d, len(members), len(sqs), ermse))
    return cells
