"""Projected-Langevin sampler for the level-set exponential mechanism.

The release density is proportional to exp(-outlyingness(y) * eps / (4 eta))
restricted to the sublevel set {O <= tau}. The chain takes drift steps along
the negative envelope gradient (zero drift outside the level set, where the
target density is flat and only diffusion can re-enter) plus Gaussian
diffusion:

    Y_i = Y_{i-1} - w * (eps / 4 eta) * grad O(Y_{i-1}) + sqrt(2 w) Z_i.

The final iterate is returned together with a flag recording whether it
landed inside the level set; callers decide how to treat outside samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .directions import DirectionSet
from .outlyingness import (
    ProjectedStats,
    outlyingness,
    outlyingness_gradient,
)
from .ptr import PrivacyParams

__all__ = ["SamplerConfig", "SampleResult", "langevin_em_sample"]

_INITS = ("gaussian", "at_point", "npmedian")


@dataclass(frozen=True)
class SamplerConfig:
    """Chain length, step size, and initialization for the Langevin sampler.

    init "gaussian" starts at a standard normal draw; "at_point" starts at
    init_point (callers typically pass a nonprivate center so the chain
    begins inside the level set instead of random-walking toward it);
    "npmedian" is a request for the orchestrator to resolve the nonprivate
    center itself and must be replaced with a concrete point before the
    chain runs.
    """

    steps: int = 2000
    step_size: float = 0.05
    init: str = "gaussian"
    init_point: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if not self.step_size > 0:
            raise ValueError("step_size must be positive")
        if self.init not in _INITS:
            raise ValueError(f"init must be one of {_INITS}")
        if self.init == "at_point":
            if self.init_point is None:
                raise ValueError("init 'at_point' requires init_point")
            pt = np.asarray(self.init_point, dtype=float)
            if pt.ndim != 1 or not np.all(np.isfinite(pt)):
                raise ValueError("init_point must be a finite 1-d vector")
            object.__setattr__(self, "init_point", pt)


@dataclass(frozen=True)
class SampleResult:
    """Final chain state plus whether it sits inside the release region."""

    point: np.ndarray
    inside: bool
    score: float

    def __post_init__(self):
        arr = np.asarray(self.point, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "point", arr)


def langevin_em_sample(
    stats: ProjectedStats,
    dirs: DirectionSet,
    params: PrivacyParams,
    config: SamplerConfig,
    rng: np.random.Generator,
) -> SampleResult:
    """Run the Langevin chain against precomputed projection statistics.

    The envelope gradient at the argmax direction is used inside the level
    set; outside it the drift is zero (flat target) and only the diffusion
    term moves the chain. The drift uses the unnormalized potential
    O(y) * eps / (4 eta).
    """
    if stats.degenerate:
        raise ValueError("cannot sample against degenerate projection scales")
    if config.init == "npmedian":
        raise ValueError(
            "init 'npmedian' must be resolved to a concrete point by the "
            "caller before sampling"
        )

    d = dirs.d
    if config.init == "at_point":
        if config.init_point.shape[0] != d:
            raise ValueError("init_point dimension mismatch")
        y = np.array(config.init_point, dtype=float)
    else:
        y = rng.standard_normal(d)

    beta = params.epsilon / (4.0 * params.eta)
    w = config.step_size
    drift_scale = w * beta
    noise_scale = math.sqrt(2.0 * w)
    tau = params.tau

    for _ in range(config.steps):
        score, idx = outlyingness(y, stats, dirs)
        if score <= tau:
            grad = outlyingness_gradient(y, stats, dirs, idx)
            y = y - drift_scale * grad + noise_scale * rng.standard_normal(d)
        else:
            y = y + noise_scale * rng.standard_normal(d)

    score, _ = outlyingness(y, stats, dirs)
    return SampleResult(point=y, inside=bool(score <= tau), score=float(score))
