"""Top-level mechanisms: the private projection-depth median (propose, test,
release) and its nonprivate counterpart via subgradient descent.

The private path is: project the data onto a seeded direction set, certify a
safety-margin lower bound, run the Laplace-noised threshold test, and on a
pass draw one point from the level-set exponential mechanism. Everything is
deterministic given the master seed, which is split into independent child
streams (directions, test noise, sampler noise) so that changing one stage's
consumption never perturbs another.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

from .directions import DirectionSet, sample_directions
from .outlyingness import (
    ProjectedStats,
    outlyingness,
    outlyingness_gradient,
    projected_stats,
)
from .ptr import (
    ABSTAIN,
    Abstain,
    PrivacyParams,
    Released,
    TestOutcome,
    ptr_test,
    safety_margin_lb,
)
from .sampler import SamplerConfig, langevin_em_sample
from .univariate import EstimatorPair, median

__all__ = [
    "DescentConfig",
    "MedianResult",
    "nonprivate_pd_median",
    "private_pd_median",
]

# Child-stream tags under the master seed.
_TAG_DIRECTIONS = 0
_TAG_TEST_NOISE = 1
_TAG_SAMPLER = 2


def _dir_seed(seed: int) -> int:
    ss = np.random.SeedSequence([seed, _TAG_DIRECTIONS])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _child_rng(seed: int, tag: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, tag]))


def _resolve_directions(
    dirs: Union[int, DirectionSet], d: int, seed: int
) -> DirectionSet:
    if isinstance(dirs, DirectionSet):
        if dirs.d != d:
            raise ValueError("direction set dimension does not match data")
        return dirs
    n_dirs = int(dirs)
    if n_dirs < 1:
        raise ValueError("need at least one direction")
    return sample_directions(n_dirs, d, _dir_seed(seed))


@dataclass(frozen=True)
class DescentConfig:
    """Subgradient descent schedule for the nonprivate median.

    Steps are normalized (unit length in space) and decay geometrically from
    step0 down to step0 * final_step_frac; step0 defaults to the largest
    projected scale so the first moves cover the data's spread.
    """

    max_iters: int = 300
    step0: Optional[float] = None
    final_step_frac: float = 1e-3

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.step0 is not None and not self.step0 > 0:
            raise ValueError("step0 must be positive")
        if not 0 < self.final_step_frac <= 1:
            raise ValueError("final_step_frac must be in (0, 1]")


@dataclass(frozen=True)
class MedianResult:
    """Outcome of one private-median invocation.

    outcome is Released(point) exactly when the noised test passed on
    non-degenerate data; degenerate inputs (zero projected scale in some
    direction) abstain regardless of the test draw, with the degenerate
    flag set. Only the seed and parameters are retained for bookkeeping,
    never the data.
    """

    outcome: Union[Released, Abstain]
    test: TestOutcome
    inside_level_set: Optional[bool]
    wall_time_ms: float
    seed: int
    params: PrivacyParams
    degenerate: bool = False

    def __post_init__(self):
        if isinstance(self.outcome, Released):
            if not self.test.passed:
                raise ValueError("released without a passing test")
            if self.degenerate:
                raise ValueError("released from degenerate data")
            pt = np.asarray(self.outcome.value, dtype=float)
            if not np.all(np.isfinite(pt)):
                raise ValueError("released point must be finite")
        elif self.test.passed and not self.degenerate:
            raise ValueError("passing test on usable data must release")

    @property
    def released(self) -> bool:
        return isinstance(self.outcome, Released)

    @property
    def point(self) -> Optional[np.ndarray]:
        return self.outcome.value if isinstance(self.outcome, Released) else None


def _coordinate_median(data: np.ndarray) -> np.ndarray:
    return np.array([median(data[:, j]) for j in range(data.shape[1])])


def _descend(
    data: np.ndarray,
    stats: ProjectedStats,
    dirs: DirectionSet,
    cfg: DescentConfig,
) -> np.ndarray:
    """Normalized subgradient descent on the outlyingness envelope.

    Tracks the best-seen iterate, so the result never scores above the
    starting point (the coordinate-wise lower median).
    """
    x = _coordinate_median(data)
    score, idx = outlyingness(x, stats, dirs)
    best_score, best_x = score, x.copy()

    step = cfg.step0 if cfg.step0 is not None else float(stats.sup_sigma)
    decay = cfg.final_step_frac ** (1.0 / cfg.max_iters)
    for _ in range(cfg.max_iters):
        g = outlyingness_gradient(x, stats, dirs, idx)
        gn = float(np.linalg.norm(g))
        if gn == 0.0:
            break
        x = x - (step / gn) * g
        step *= decay
        score, idx = outlyingness(x, stats, dirs)
        if score < best_score:
            best_score, best_x = score, x.copy()
    return best_x


def nonprivate_pd_median(
    data: np.ndarray,
    est: EstimatorPair,
    dirs: Union[int, DirectionSet],
    descent_cfg: DescentConfig = DescentConfig(),
    seed: int = 0,
) -> np.ndarray:
    """Approximate minimizer of the discretized outlyingness envelope.

    dirs may be a prebuilt DirectionSet or a direction count (the set is
    then derived from the seed, matching the private path's derivation so
    both see identical projections for the same seed).
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 2:
        raise ValueError("data must be 2-d (rows are observations)")
    direction_set = _resolve_directions(dirs, data.shape[1], seed)
    stats = projected_stats(data, direction_set, est, keep_projections=False)
    if stats.degenerate:
        raise ValueError("degenerate data: zero projected scale")
    return _descend(data, stats, direction_set, descent_cfg)


def private_pd_median(
    data: np.ndarray,
    est: EstimatorPair,
    params: PrivacyParams,
    dirs: Union[int, DirectionSet],
    sampler_cfg: SamplerConfig = SamplerConfig(),
    seed: int = 0,
    descent_cfg: DescentConfig = DescentConfig(),
) -> MedianResult:
    """Propose, test, release.

    Certifies a safety-margin lower bound, runs the noised threshold test,
    and on a pass releases one Langevin draw from the level-set exponential
    mechanism. Degenerate data abstains (the test is still drawn, so the
    privacy budget accounting is unchanged). sampler_cfg.init "npmedian"
    resolves to the nonprivate median computed on the same direction set.
    """
    t0 = time.perf_counter()
    data = np.asarray(data, dtype=float)
    if data.ndim != 2:
        raise ValueError("data must be 2-d (rows are observations)")
    n, d = data.shape
    if n < 5:
        raise ValueError("need n >= 5")
    if d < 1:
        raise ValueError("need d >= 1")

    direction_set = _resolve_directions(dirs, d, seed)
    stats = projected_stats(data, direction_set, est)
    test_rng = _child_rng(seed, _TAG_TEST_NOISE)

    if stats.degenerate:
        test = ptr_test(0, params, test_rng, k_stop=2, vr_value=math.inf)
        # A passing draw on degenerate data cannot be honored: there is no
        # usable release density. Record the draw, abstain anyway.
        test = TestOutcome(sm=0, noise_w=test.noise_w, passed=False,
                           k_stop=2, vr_value=math.inf)
        return MedianResult(
            outcome=ABSTAIN, test=test, inside_level_set=None,
            wall_time_ms=(time.perf_counter() - t0) * 1e3,
            seed=seed, params=params, degenerate=True,
        )

    sm, diag = safety_margin_lb(data, direction_set, stats, params, est)
    test = ptr_test(sm, params, test_rng,
                    k_stop=diag.k_stop, vr_value=diag.vr_value)

    if not test.passed:
        return MedianResult(
            outcome=ABSTAIN, test=test, inside_level_set=None,
            wall_time_ms=(time.perf_counter() - t0) * 1e3,
            seed=seed, params=params,
        )

    cfg = sampler_cfg
    if cfg.init == "npmedian":
        center = _descend(data, stats, direction_set, descent_cfg)
        cfg = replace(cfg, init="at_point", init_point=center)
    sampler_rng = _child_rng(seed, _TAG_SAMPLER)
    draw = langevin_em_sample(stats, direction_set, params, cfg, sampler_rng)
    return MedianResult(
        outcome=Released(draw.point),
        test=test,
        inside_level_set=draw.inside,
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
        seed=seed,
        params=params,
    )
