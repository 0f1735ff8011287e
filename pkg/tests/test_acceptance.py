"""Acceptance gate for the package.

Each test covers one release criterion, prints one PASS/FAIL line, and pins
its runtime budget. The two heavy sweeps (desk-scale ERMSE ordering and the
n=5000 tail behavior) run once per session and are shared; their CSV and
summary artifacts are written to artifacts/ for downstream consumers.
"""

import itertools
import math
import time
from pathlib import Path
from types import SimpleNamespace

import numpy as np
import pytest

from pdmedian.bench import (
    ExperimentConfig,
    run_experiment,
    summarize,
    summary_path_for,
    write_results,
)
from pdmedian.datagen import CauchyProduct, ContaminatedGaussian, Gaussian
from pdmedian.directions import DirectionSet, sample_directions
from pdmedian.outlyingness import outlyingness, outlyingness_gradient, projected_stats
from pdmedian.private_median import nonprivate_pd_median, private_pd_median
from pdmedian.ptr import PrivacyParams
from pdmedian.sampler import SamplerConfig
from pdmedian.univariate import (
    MED_MAD,
    iqr,
    mad,
    median,
    trimmed_ad,
    trimmed_mean,
)
from pdmedian.sensitivity import sens_mad, sens_median, sens_trimmed

from oracles import (
    REPLACEMENT_GRID,
    brute_iqr,
    brute_mad,
    brute_median,
    brute_trimmed_ad,
    brute_trimmed_mean,
    grid_multisets,
    seeded_probe_dataset,
    worst_change,
)

ARTIFACTS = Path(__file__).resolve().parent.parent / "artifacts"
MASTER_SEED = 20260815

DESK_CFG = ExperimentConfig(
    n=2000,
    dims=(2, 5, 10),
    reps=50,
    estimators=("sample_mean", "nonprivate_pd", "private_pd"),
    distributions=(Gaussian(), ContaminatedGaussian(frac=0.25, shift=5.0)),
    epsilon=10.0,
    eta=0.045,
    tau=0.5,
    sampler_step_size=1e-4,
    sampler_init="npmedian",
    seed=MASTER_SEED,
)

TAIL_CFG = ExperimentConfig(
    n=5000,
    dims=(2,),
    reps=50,
    estimators=("private_pd",),
    distributions=(Gaussian(), CauchyProduct()),
    epsilon=10.0,
    tau=1.0,  # eta defaults to 30 ln(n)/n
    sampler_step_size=1e-4,
    sampler_init="npmedian",
    seed=MASTER_SEED,
)

REPORT: list[str] = []


@pytest.fixture(scope="module", autouse=True)
def _write_report():
    yield
    ARTIFACTS.mkdir(parents=True, exist_ok=True)
    (ARTIFACTS / "acceptance_report.txt").write_text("\n".join(REPORT) + "\n")


def _verdict(name: str, ok: bool, detail: str) -> None:
    line = f"[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    REPORT.append(line)
    print(line)


def _cells(rows):
    return {
        (c["estimator"], c["distribution"], c["d"]): c
        for c in summarize(rows)["cells"]
    }


@pytest.fixture(scope="module")
def desk_run():
    t0 = time.perf_counter()
    rows = run_experiment(DESK_CFG)
    elapsed = time.perf_counter() - t0
    ARTIFACTS.mkdir(parents=True, exist_ok=True)
    write_results(rows, str(ARTIFACTS / "desk.csv"))
    return SimpleNamespace(rows=rows, cells=_cells(rows), elapsed=elapsed)


@pytest.fixture(scope="module")
def tail_run():
    t0 = time.perf_counter()
    rows = run_experiment(TAIL_CFG)
    elapsed = time.perf_counter() - t0
    ARTIFACTS.mkdir(parents=True, exist_ok=True)
    write_results(rows, str(ARTIFACTS / "tail.csv"))
    return SimpleNamespace(rows=rows, cells=_cells(rows), elapsed=elapsed)


def test_estimators_match_bruteforce_on_all_small_multisets():
    t0 = time.perf_counter()
    mismatches = 0
    for n in range(1, 9):
        for ms in grid_multisets(n):
            xs = list(ms)
            mismatches += median(xs) != brute_median(xs)
            mismatches += mad(xs) != brute_mad(xs)
            mismatches += iqr(xs) != brute_iqr(xs)
            for alpha in (0.1, 0.25):
                mismatches += trimmed_mean(xs, alpha) != brute_trimmed_mean(xs, alpha)
                mismatches += trimmed_ad(xs, alpha) != brute_trimmed_ad(xs, alpha)
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 10.0
    _verdict(
        "estimator oracle (all multisets n<=8, exact)",
        ok,
        f"mismatches={mismatches}, {elapsed:.1f}s",
    )
    assert mismatches == 0
    assert elapsed < 10.0


def test_sensitivity_bounds_have_zero_violations_exhaustively(line):
    t0 = time.perf_counter()
    tol = 1e-12
    violations = 0
    datasets = 0

    def min_over_replacements(xs, k, fn):
        best = fn(list(xs))
        for idxs in itertools.combinations(range(len(xs)), k):
            for vals in itertools.product(REPLACEMENT_GRID, repeat=k):
                mod = list(xs)
                for i, v in zip(idxs, vals):
                    mod[i] = v
                best = min(best, fn(mod))
        return best

    rng = np.random.default_rng(20260815)
    while datasets < 120:  # median/mad bounds
        xs = seeded_probe_dataset(rng)
        datasets += 1
        n = xs.size
        m = (n + 1) // 2
        data = xs.reshape(-1, 1)
        for k in (1, 2):
            if m - k < 1 or m + k > n:
                continue
            s_mu = sens_median(data, line, k)
            s_sigma, b_hat = sens_mad(data, line, k)
            violations += worst_change(xs, k, brute_median) > s_mu + tol
            violations += worst_change(xs, k, brute_mad) > s_sigma + tol
            violations += b_hat > min_over_replacements(xs, k, brute_mad) + tol

    alpha = 0.25
    while datasets < 200:  # trimmed-pair bounds
        xs = seeded_probe_dataset(rng)
        datasets += 1
        data = xs.reshape(-1, 1)
        g = math.floor(xs.size * alpha)
        for k in (1, 2):
            if k > g:
                continue
            s_mu, s_sigma = sens_trimmed(data, line, k, alpha)
            tm = lambda v: brute_trimmed_mean(v, alpha)
            tad = lambda v: brute_trimmed_ad(v, alpha)
            violations += worst_change(xs, k, tm) > s_mu + tol
            violations += worst_change(xs, k, tad) > s_sigma + tol

    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 120.0
    _verdict(
        "sensitivity soundness (200 datasets, exhaustive replacement)",
        ok,
        f"violations={violations}, datasets={datasets}, {elapsed:.1f}s",
    )
    assert violations == 0
    assert elapsed < 120.0


def test_envelope_gradient_matches_finite_differences():
    t0 = time.perf_counter()
    rng = np.random.default_rng(314)
    h = 1e-6
    tau = 2.0
    checked = 0
    worst = 0.0
    while checked < 500:
        d = int(rng.integers(2, 5))
        n = int(rng.integers(20, 61))
        data = rng.standard_normal((n, d))
        dirs = sample_directions(100, d, seed=int(rng.integers(1 << 30)))
        stats = projected_stats(data, dirs, MED_MAD, keep_projections=False)
        if stats.degenerate:
            continue
        x = rng.standard_normal(d) * 0.3
        scores = np.abs(dirs.vectors @ x - stats.mu) / stats.sigma
        top = np.sort(scores)[-2:]
        # keep x inside the level set, away from zero and from argmax ties
        if top[1] < 0.05 or top[1] > tau or top[1] - top[0] < 1e-5:
            continue
        grad = outlyingness_gradient(x, stats, dirs)
        fd = np.empty(d)
        for j in range(d):
            e = np.zeros(d)
            e[j] = h
            fp = outlyingness(x + e, stats, dirs)[0]
            fm = outlyingness(x - e, stats, dirs)[0]
            fd[j] = (fp - fm) / (2.0 * h)
        worst = max(worst, np.linalg.norm(fd - grad) / np.linalg.norm(grad))
        checked += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-4 and elapsed < 30.0
    _verdict(
        "gradient vs central differences (500 pairs)",
        ok,
        f"worst rel err={worst:.2e}, {elapsed:.1f}s",
    )
    assert worst <= 1e-4
    assert elapsed < 30.0


def test_outlyingness_invariance_and_median_equivariance():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2026)

    # outlyingness: translation invariance and positive-scale invariance
    data3 = rng.standard_normal((60, 3))
    dirs3 = sample_directions(128, 3, seed=17)
    shift3 = np.array([5.0, -2.0, 0.25])
    scale = 37.5
    worst_o = 0.0
    for _ in range(25):
        x = rng.standard_normal(3) * 0.5
        base = outlyingness(x, projected_stats(data3, dirs3, MED_MAD), dirs3)[0]
        shifted = outlyingness(
            x + shift3, projected_stats(data3 + shift3, dirs3, MED_MAD), dirs3
        )[0]
        scaled = outlyingness(
            scale * x, projected_stats(scale * data3, dirs3, MED_MAD), dirs3
        )[0]
        worst_o = max(worst_o, abs(shifted - base), abs(scaled - base))

    # nonprivate median: translation equivariance at d=2
    data2 = rng.standard_normal((500, 2))
    dirs2 = sample_directions(200, 2, seed=11)
    shift2 = np.array([25.0, -3.0])
    np_base = nonprivate_pd_median(data2, MED_MAD, dirs2)
    np_shift = nonprivate_pd_median(data2 + shift2, MED_MAD, dirs2)
    worst_np = float(np.abs(np_shift - (np_base + shift2)).max())

    # private median: translation equivariance with shared seeds; the shift
    # at d=2 is kept small so the volume condition holds on both datasets
    line = DirectionSet(np.array([[1.0]]), seed=0, d=1)
    data1 = rng.standard_normal((600, 1))
    p1 = PrivacyParams(epsilon=10.0, delta=0.005, eta=0.1, tau=1.0)
    s1 = SamplerConfig(steps=300, step_size=1e-3, init="npmedian")
    a1 = private_pd_median(data1, MED_MAD, p1, line, sampler_cfg=s1, seed=5)
    b1 = private_pd_median(data1 + 12.5, MED_MAD, p1, line, sampler_cfg=s1, seed=5)

    pdata = rng.standard_normal((1000, 2))
    small = np.array([0.15, -0.1])
    p2 = PrivacyParams(epsilon=10.0, delta=0.005, eta=0.1, tau=1.5)
    a2 = private_pd_median(pdata, MED_MAD, p2, dirs2, sampler_cfg=s1, seed=5)
    b2 = private_pd_median(pdata + small, MED_MAD, p2, dirs2, sampler_cfg=s1, seed=5)

    released = a1.released and b1.released and a2.released and b2.released
    worst_pv = math.inf
    if released:
        worst_pv = max(
            float(np.abs(b1.point - (a1.point + 12.5)).max()),
            float(np.abs(b2.point - (a2.point + small)).max()),
        )

    elapsed = time.perf_counter() - t0
    ok = (
        worst_o <= 1e-9
        and worst_np <= 1e-9
        and released
        and worst_pv <= 1e-9
        and elapsed < 30.0
    )
    _verdict(
        "equivariance suite (1e-9, shared seeds)",
        ok,
        f"outlyingness={worst_o:.1e}, nonprivate={worst_np:.1e}, "
        f"private={worst_pv:.1e}, {elapsed:.1f}s",
    )
    assert worst_o <= 1e-9
    assert worst_np <= 1e-9
    assert released
    assert worst_pv <= 1e-9
    assert elapsed < 30.0


def test_release_on_clean_data_abstain_on_split(tail_run):
    t0 = time.perf_counter()
    gauss = tail_run.cells[("private_pd", "gaussian", 2)]
    release_rate = gauss["n_released"] / gauss["n_total"]

    n, d = 5000, 2
    split = np.zeros((n, d))
    split[n // 2 :] = 1e6
    params = PrivacyParams(
        epsilon=10.0, delta=10.0 / n, eta=30.0 * math.log(n) / n, tau=1.0
    )
    scfg = SamplerConfig(steps=2000, step_size=1e-4, init="gaussian")
    abstains = sum(
        not private_pd_median(
            split, MED_MAD, params, 500, sampler_cfg=scfg, seed=rep
        ).released
        for rep in range(50)
    )
    abstain_rate = abstains / 50

    elapsed = tail_run.elapsed + (time.perf_counter() - t0)
    ok = release_rate >= 0.9 and abstain_rate >= 0.9 and elapsed < 300.0
    _verdict(
        "release on clean gaussian / abstain on split mass",
        ok,
        f"release={release_rate:.2f}, abstain={abstain_rate:.2f}, {elapsed:.1f}s",
    )
    assert release_rate >= 0.9
    assert abstain_rate >= 0.9
    assert elapsed < 300.0


def test_desk_scale_error_ordering(desk_run):
    cells = desk_run.cells
    n = DESK_CFG.n

    # (a) sample mean on clean data sits at its parametric rate
    rate_ok = True
    rate_detail = []
    for d in DESK_CFG.dims:
        ermse = cells[("sample_mean", "gaussian", d)]["ermse"]
        target = math.sqrt(d / n)
        rate_ok &= 0.7 * target <= ermse <= 1.3 * target
        rate_detail.append(f"d={d}:{ermse / target:.2f}x")

    # (b) the depth median resists contamination the mean does not
    robust_ok = True
    for d in DESK_CFG.dims:
        depth = cells[("nonprivate_pd", "contaminated", d)]["ermse"]
        mean = cells[("sample_mean", "contaminated", d)]["ermse"]
        robust_ok &= depth < mean

    # (c) privacy costs at most 3x on clean data
    cost_ok = True
    cost_detail = []
    for d in DESK_CFG.dims:
        priv = cells[("private_pd", "gaussian", d)]
        nonpriv = cells[("nonprivate_pd", "gaussian", d)]["ermse"]
        cost_ok &= priv["ermse"] is not None and priv["ermse"] <= 3.0 * nonpriv
        ratio = math.nan if priv["ermse"] is None else priv["ermse"] / nonpriv
        cost_detail.append(f"d={d}:{ratio:.2f}x")

    ok = rate_ok and robust_ok and cost_ok and desk_run.elapsed < 1200.0
    _verdict(
        "desk-scale error ordering (mean rate, robustness, privacy cost)",
        ok,
        f"mean rate {','.join(rate_detail)}; depth<mean under contamination: "
        f"{robust_ok}; privacy {','.join(cost_detail)}; {desk_run.elapsed:.1f}s",
    )
    assert rate_ok
    assert robust_ok
    assert cost_ok
    assert desk_run.elapsed < 1200.0


def test_heavy_tails_inflate_private_error(tail_run):
    gauss = tail_run.cells[("private_pd", "gaussian", 2)]
    cauchy = tail_run.cells[("private_pd", "cauchy", 2)]
    comparable = gauss["ermse"] is not None and cauchy["ermse"] is not None
    ok = (
        comparable
        and cauchy["ermse"] > gauss["ermse"]
        and tail_run.elapsed < 600.0
    )
    _verdict(
        "heavy tails inflate private error at fixed (n, d)",
        ok,
        f"cauchy={cauchy['ermse']}, gaussian={gauss['ermse']}, "
        f"{tail_run.elapsed:.1f}s",
    )
    assert comparable
    assert cauchy["ermse"] > gauss["ermse"]
    assert tail_run.elapsed < 600.0


def test_identical_seed_reproduces_csv_bytes(desk_run, tmp_path):
    rerun_path = str(tmp_path / "desk_rerun.csv")
    write_results(run_experiment(DESK_CFG), rerun_path)
    original = (ARTIFACTS / "desk.csv").read_bytes()
    rerun = Path(rerun_path).read_bytes()
    summaries_match = (
        Path(summary_path_for(str(ARTIFACTS / "desk.csv"))).read_bytes()
        == Path(summary_path_for(rerun_path)).read_bytes()
    )
    ok = original == rerun and summaries_match
    _verdict(
        "same master seed reproduces the results CSV byte for byte",
        ok,
        f"csv bytes equal: {original == rerun}, summaries equal: {summaries_match}",
    )
    assert original == rerun
    assert summaries_match
