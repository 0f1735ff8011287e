"""Benchmark harness: sweep distributions, dimensions, and estimators over
seeded replications; aggregate ERMSE and abstention rates; persist rows as
CSV with a summary JSON alongside.

Determinism contract: with measure_time off (the default) the same config
produces a byte-identical CSV, because wall times are pinned to 0.0 and
every replication's randomness derives from the master seed through a
counter-based split on (distribution, dimension, rep).
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .datagen import (
    CauchyProduct,
    ContaminatedGaussian,
    DataSpec,
    Distribution,
    Gaussian,
    generate,
)
from .directions import sample_directions
from .private_median import (
    DescentConfig,
    _dir_seed,
    nonprivate_pd_median,
    private_pd_median,
)
from .ptr import PrivacyParams
from .sampler import SamplerConfig
from .univariate import MED_MAD, EstimatorPair

__all__ = [
    "CSV_HEADER",
    "ExperimentConfig",
    "ResultRow",
    "run_experiment",
    "summarize",
    "write_results",
    "read_results",
    "format_summary",
]

CSV_HEADER = ("estimator", "distribution", "d", "rep",
              "released", "sq_error", "wall_ms", "seed")

ESTIMATORS = ("sample_mean", "nonprivate_pd", "private_pd")

_DIST_CODES = {"gaussian": 0, "contaminated": 1, "cauchy": 2}

_ETA_RULES = ("const", "cauchy")


@dataclass(frozen=True)
class ResultRow:
    """One estimator run on one replication."""

    estimator: str
    distribution: str
    d: int
    rep: int
    released: bool
    sq_error: Optional[float]
    wall_ms: float
    seed: int

    def __post_init__(self):
        if self.released and self.sq_error is None:
            raise ValueError("released rows must carry a squared error")
        if not self.released and self.sq_error is not None:
            raise ValueError("abstained rows carry no squared error")

    def to_fields(self) -> list[str]:
        sq = "" if self.sq_error is None else repr(float(self.sq_error))
        return [
            self.estimator,
            self.distribution,
            str(self.d),
            str(self.rep),
            "true" if self.released else "false",
            sq,
            repr(float(self.wall_ms)),
            str(self.seed),
        ]

    @classmethod
    def from_fields(cls, fields: list[str]) -> "ResultRow":
        if len(fields) != len(CSV_HEADER):
            raise ValueError(f"expected {len(CSV_HEADER)} fields, got {len(fields)}")
        return cls(
            estimator=fields[0],
            distribution=fields[1],
            d=int(fields[2]),
            rep=int(fields[3]),
            released={"true": True, "false": False}[fields[4]],
            sq_error=None if fields[5] == "" else float(fields[5]),
            wall_ms=float(fields[6]),
            seed=int(fields[7]),
        )


@dataclass(frozen=True)
class ExperimentConfig:
    """Full sweep description; every run is a pure function of this object."""

    n: int = 2000
    dims: tuple = (2, 5, 10)
    reps: int = 50
    estimators: tuple = ESTIMATORS
    distributions: tuple = (Gaussian(),)
    est_pair: EstimatorPair = MED_MAD
    epsilon: float = 10.0
    delta: Optional[float] = None       # None: 10 / n
    eta: Optional[float] = None         # None: follow eta_rule
    eta_rule: str = "const"             # "const": c ln(n)/n; "cauchy": c d^1.5 / n
    eta_const: float = 30.0
    tau: float = 1.0
    n_dirs: Optional[int] = None        # None: 500 if d < 20 else 1000
    sampler_steps: int = 2000
    sampler_step_size: float = 5e-4
    sampler_init: str = "npmedian"
    descent: DescentConfig = DescentConfig()
    seed: int = 0
    measure_time: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.n < 5:
            raise ValueError("n must be >= 5")
        if self.reps < 1:
            raise ValueError("reps must be >= 1")
        if not self.dims:
            raise ValueError("dims must be nonempty")
        if any(d < 1 for d in self.dims):
            raise ValueError("dims must be positive")
        unknown = set(self.estimators) - set(ESTIMATORS)
        if unknown:
            raise ValueError(f"unknown estimators: {sorted(unknown)}")
        if not self.estimators:
            raise ValueError("estimators must be nonempty")
        if not self.distributions:
            raise ValueError("distributions must be nonempty")
        if self.eta_rule not in _ETA_RULES:
            raise ValueError(f"eta_rule must be one of {_ETA_RULES}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        # Fail early on invalid privacy knobs rather than mid-sweep.
        for d in self.dims:
            self.privacy_for(d)

    def eta_for(self, d: int) -> float:
        if self.eta is not None:
            return self.eta
        if self.eta_rule == "cauchy":
            return self.eta_const * d ** 1.5 / self.n
        return self.eta_const * math.log(self.n) / self.n

    def delta_value(self) -> float:
        return self.delta if self.delta is not None else 10.0 / self.n

    def privacy_for(self, d: int) -> PrivacyParams:
        return PrivacyParams(
            epsilon=self.epsilon,
            delta=self.delta_value(),
            eta=self.eta_for(d),
            tau=self.tau,
        )

    def n_dirs_for(self, d: int) -> int:
        if self.n_dirs is not None:
            return self.n_dirs
        return 500 if d < 20 else 1000

    def sampler_for(self) -> SamplerConfig:
        return SamplerConfig(
            steps=self.sampler_steps,
            step_size=self.sampler_step_size,
            init=self.sampler_init,
        )


def _rep_seed(master: int, dist_code: int, d: int, rep: int) -> int:
    ss = np.random.SeedSequence([master, dist_code, d, rep])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _rep_rows(cfg: ExperimentConfig, dist: Distribution,
              d: int, rep: int) -> list[ResultRow]:
    """All estimator rows for one (distribution, d, rep) cell."""
    seed = _rep_seed(cfg.seed, _DIST_CODES[dist.name], d, rep)
    data, theta = generate(DataSpec(dist=dist, n=cfg.n, d=d, seed=seed))
    dirs = sample_directions(cfg.n_dirs_for(d), d, _dir_seed(seed))
    params = cfg.privacy_for(d)

    rows = []
    for name in cfg.estimators:
        t0 = time.perf_counter()
        released = True
        if name == "sample_mean":
            err = data.mean(axis=0) - theta
            sq = float(err @ err)
        elif name == "nonprivate_pd":
            point = nonprivate_pd_median(data, cfg.est_pair, dirs,
                                         cfg.descent, seed=seed)
            err = point - theta
            sq = float(err @ err)
        else:  # private_pd
            result = private_pd_median(
                data, cfg.est_pair, params, dirs,
                sampler_cfg=cfg.sampler_for(), seed=seed,
                descent_cfg=cfg.descent,
            )
            released = result.released
            if released:
                err = result.point - theta
                sq = float(err @ err)
            else:
                sq = None
        wall = (time.perf_counter() - t0) * 1e3 if cfg.measure_time else 0.0
        rows.append(ResultRow(
            estimator=name, distribution=dist.name, d=d, rep=rep,
            released=released, sq_error=sq, wall_ms=wall, seed=seed,
        ))
    return rows


def _rep_task(args) -> list[ResultRow]:
    return _rep_rows(*args)


def run_experiment(cfg: ExperimentConfig) -> list[ResultRow]:
    """Run the full sweep; rows come back sorted by (estimator,
    distribution, d, rep) regardless of execution order."""
    tasks = [
        (cfg, dist, d, rep)
        for dist in cfg.distributions
        for d in cfg.dims
        for rep in range(cfg.reps)
    ]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_rep_task, tasks, chunksize=4))
    else:
        chunks = [_rep_rows(*t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r.estimator, r.distribution, r.d, r.rep))
    return rows


def summarize(rows: list[ResultRow]) -> dict:
    """Per-cell ERMSE over released reps plus abstention rates.

    Cells with zero released reps get a null ermse. abstain_rate and the
    released count always satisfy abstain_rate = 1 - n_released / n_total.
    """
    cells: dict[tuple, list[ResultRow]] = {}
    for row in rows:
        cells.setdefault((row.estimator, row.distribution, row.d), []).append(row)
    out = []
    for (est, dist, d) in sorted(cells):
        group = cells[(est, dist, d)]
        sqs = [r.sq_error for r in group if r.released]
        ermse = math.sqrt(sum(sqs) / len(sqs)) if sqs else None
        out.append({
            "estimator": est,
            "distribution": dist,
            "d": d,
            "n_total": len(group),
            "n_released": len(sqs),
            "abstain_rate": 1.0 - len(sqs) / len(group),
            "ermse": ermse,
        })
    return {"cells": out}


def summary_path_for(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".summary.json"


def write_results(rows: list[ResultRow], path: str) -> str:
    """Write the rows CSV (exact pinned header) and the summary JSON
    alongside (same name, .summary.json extension). Returns the CSV path."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row.to_fields())
    summary = summarize(rows)
    with open(summary_path_for(path), "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def read_results(path: str) -> list[ResultRow]:
    """Parse a results CSV back into rows (round-trip inverse of write)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected header: {header}")
        return [ResultRow.from_fields(fields) for fields in reader]


def format_summary(summary: dict) -> str:
    """Fixed-width text table of the summary cells."""
    lines = [f"{'estimator':<15}{'distribution':<14}{'d':>3}  "
             f"{'ermse':>12}  {'abstain':>8}  {'released':>9}"]
    for cell in summary["cells"]:
        ermse = "-" if cell["ermse"] is None else f"{cell['ermse']:.6f}"
        lines.append(
            f"{cell['estimator']:<15}{cell['distribution']:<14}"
            f"{cell['d']:>3}  {ermse:>12}  {cell['abstain_rate']:>8.2f}  "
            f"{cell['n_released']:>4}/{cell['n_total']:<4}"
        )
    return "\n".join(lines)
