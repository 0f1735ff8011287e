"""Command-line entry point for the benchmark harness.

Example:

    pdmedian-bench --n 2000 --dims 2,5,10 --reps 50 --dist gaussian \
        --estimator med_mad --seed 0 --out results.csv

writes results.csv (one row per estimator per replication) plus
results.summary.json, and prints the summary table.
"""

from __future__ import annotations

import argparse
import sys

from .bench import (
    ESTIMATORS,
    ExperimentConfig,
    format_summary,
    run_experiment,
    summarize,
    write_results,
)
from .datagen import CauchyProduct, ContaminatedGaussian, Gaussian
from .private_median import DescentConfig
from .univariate import MED_MAD, tm_tad


def _parse_dims(text: str) -> tuple:
    try:
        dims = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims list: {text!r}")
    if not dims:
        raise argparse.ArgumentTypeError("dims list is empty")
    return dims


def _parse_estimators(text: str) -> tuple:
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    unknown = set(names) - set(ESTIMATORS)
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown estimators {sorted(unknown)}; choose from {ESTIMATORS}")
    return names


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pdmedian-bench",
        description="Benchmark private and nonprivate projection-depth "
                    "medians against the sample mean on synthetic data.",
    )
    p.add_argument("--n", type=int, default=2000, help="sample size per rep")
    p.add_argument("--dims", type=_parse_dims, default=(2, 5, 10),
                   help="comma-separated dimensions, e.g. 2,5,10")
    p.add_argument("--reps", type=int, default=50, help="replications per cell")
    p.add_argument("--eps", type=float, default=10.0, help="privacy epsilon")
    p.add_argument("--delta", type=float, default=None,
                   help="privacy delta (default 10/n)")
    p.add_argument("--eta", type=float, default=None,
                   help="explicit smoothing eta (overrides --eta-rule)")
    p.add_argument("--eta-rule", choices=("const", "cauchy"), default="const",
                   help="eta = C ln(n)/n (const) or C d^1.5/n (cauchy)")
    p.add_argument("--eta-const", type=float, default=30.0,
                   help="constant C in the eta rule")
    p.add_argument("--tau", type=float, default=1.0,
                   help="outlyingness radius of the release region")
    p.add_argument("--n-dirs", type=int, default=None,
                   help="projection directions (default 500 if d<20 else 1000)")
    p.add_argument("--steps", type=int, default=2000,
                   help="Langevin chain length")
    p.add_argument("--step-size", type=float, default=5e-4,
                   help="Langevin step size")
    p.add_argument("--sampler-init", choices=("gaussian", "npmedian"),
                   default="npmedian",
                   help="chain start: standard normal draw or nonprivate median")
    p.add_argument("--dist", choices=("gaussian", "contaminated", "cauchy"),
                   action="append", default=None,
                   help="distribution to sweep (repeatable; default gaussian)")
    p.add_argument("--contam-frac", type=float, default=0.25,
                   help="contaminated fraction for --dist contaminated")
    p.add_argument("--contam-shift", type=float, default=5.0,
                   help="per-coordinate mean shift of contaminated rows")
    p.add_argument("--estimator", choices=("med_mad", "tm_tad"),
                   default="med_mad",
                   help="location/scale pair used by the depth medians")
    p.add_argument("--alpha", type=float, default=0.1,
                   help="trim fraction for --estimator tm_tad")
    p.add_argument("--estimators", type=_parse_estimators,
                   default=ESTIMATORS,
                   help="comma-separated subset of " + ",".join(ESTIMATORS))
    p.add_argument("--descent-iters", type=int, default=300,
                   help="nonprivate descent iterations")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--measure-time", action="store_true",
                   help="record real wall times (breaks byte-identical reruns)")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel replication workers")
    p.add_argument("--out", required=True, help="output CSV path")
    return p


def _make_distributions(args) -> tuple:
    names = args.dist if args.dist else ["gaussian"]
    dists = []
    for name in names:
        if name == "gaussian":
            dists.append(Gaussian())
        elif name == "contaminated":
            dists.append(ContaminatedGaussian(frac=args.contam_frac,
                                              shift=args.contam_shift))
        else:
            dists.append(CauchyProduct())
    return tuple(dists)


def config_from_args(args) -> ExperimentConfig:
    est_pair = MED_MAD if args.estimator == "med_mad" else tm_tad(args.alpha)
    return ExperimentConfig(
        n=args.n,
        dims=args.dims,
        reps=args.reps,
        estimators=args.estimators,
        distributions=_make_distributions(args),
        est_pair=est_pair,
        epsilon=args.eps,
        delta=args.delta,
        eta=args.eta,
        eta_rule=args.eta_rule,
        eta_const=args.eta_const,
        tau=args.tau,
        n_dirs=args.n_dirs,
        sampler_steps=args.steps,
        sampler_step_size=args.step_size,
        sampler_init=args.sampler_init,
        descent=DescentConfig(max_iters=args.descent_iters),
        seed=args.seed,
        measure_time=args.measure_time,
        workers=args.workers,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        rows = run_experiment(cfg)
        write_results(rows, args.out)
        print(format_summary(summarize(rows)))
        print(f"wrote {args.out}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
