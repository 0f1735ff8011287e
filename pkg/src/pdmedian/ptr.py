"""Propose-test-release machinery: the volume-ratio condition, the
safety-margin lower-bound loop, the Laplace-noised threshold test, and the
generic test/release composition.

A dataset is "safe" for the level-set exponential mechanism when no small
contamination can change the mechanism's density too much; the safety margin
is the number of row changes needed to leave the safe set. The loop below
certifies a lower bound sm on that margin by checking, for growing k, that

* the volume-ratio bound VR stays below delta (the sublevel set keeps enough
  mass relative to the escape set), and
* the outlyingness-deviation bound delta_hat_k stays below eta.

The released bit is Z = 1{ sm + (2/eps) W > (2/eps) ln(1/(2 delta)) } with W
standard Laplace. An abstention (Z = 0) still spends the privacy budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .directions import DirectionSet
from .outlyingness import ProjectedStats
from .sensitivity import SensitivityReport, sensitivity_report
from .univariate import EstimatorPair

__all__ = [
    "PrivacyParams",
    "TestOutcome",
    "Released",
    "Abstain",
    "ABSTAIN",
    "sample_laplace",
    "volume_ratio",
    "log_volume_ratio",
    "safety_margin_lb",
    "SafetyDiagnostics",
    "ptr_test",
    "generic_ptr",
]

# Largest |W| an inverse-CDF Laplace draw can realize in double precision:
# |W| = -ln(1 - 2|U|) <= -ln(2^-52) ~= 36.04. Used for the provably outcome-
# preserving early stop of the safety-margin loop.
_LAPLACE_MAX_ABS = 37.0


@dataclass(frozen=True)
class PrivacyParams:
    """Privacy budget (epsilon, delta) plus mechanism knobs (eta, tau).

    eta trades utility for testability (larger eta flattens the release
    density but makes the deviation condition easier); tau is the
    outlyingness radius of the release region.
    """

    epsilon: float
    delta: float
    eta: float
    tau: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not 0 < self.delta <= 0.5:
            raise ValueError("delta must be in (0, 1/2]")
        if not self.eta > 0:
            raise ValueError("eta must be positive")
        if not self.tau > 0:
            raise ValueError("tau must be positive")

    @property
    def test_threshold(self) -> float:
        """(2/eps) ln(1/(2 delta)), the bar the noised margin must clear."""
        return (2.0 / self.epsilon) * math.log(1.0 / (2.0 * self.delta))


@dataclass(frozen=True)
class TestOutcome:
    """Result of the noised safety test, with loop diagnostics."""

    sm: int
    noise_w: float
    passed: bool
    k_stop: int
    vr_value: float

    def __post_init__(self):
        if self.sm < 0:
            raise ValueError("sm must be nonnegative")


@dataclass(frozen=True)
class Released:
    """A released value (the mechanism produced output)."""

    value: object


class Abstain:
    """The null outcome: the safety test failed, nothing is released."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Abstain"


ABSTAIN = Abstain()


def sample_laplace(rng: np.random.Generator) -> float:
    """Standard Laplace(0, 1) via inverse CDF.

    U uniform on (-1/2, 1/2), W = -sign(U) ln(1 - 2|U|); the boundary draw
    with 1 - 2|U| == 0 is redrawn.
    """
    while True:
        u = rng.random() - 0.5
        r = 1.0 - 2.0 * abs(u)
        if r > 0.0:
            break
    if u == 0.0:
        return 0.0
    return -math.copysign(1.0, u) * math.log(r)


def log_volume_ratio(stats: ProjectedStats, params: PrivacyParams, d: int) -> float:
    """Natural log of the volume-ratio bound; +inf for degenerate scales.

    Computed in log space so the comparison against delta never overflows.
    """
    if stats.degenerate or stats.inf_sigma <= 0.0:
        return math.inf
    eps, eta, tau = params.epsilon, params.eta, params.tau
    inf_s, sup_s, a_mu = stats.inf_sigma, stats.sup_sigma, stats.alpha_mu
    exponent = -eps * tau / (4.0 * eta) + eps * (0.5 + a_mu / (4.0 * inf_s * eta)) + d
    ratio = (sup_s * (tau + 2.0 * eta) + a_mu) / (inf_s * 4.0 * eta * d * eps)
    return exponent + d * math.log(ratio)


def volume_ratio(stats: ProjectedStats, params: PrivacyParams, d: int) -> float:
    """The volume-ratio bound itself (may overflow to +inf; compare in logs)."""
    lv = log_volume_ratio(stats, params, d)
    if lv == math.inf:
        return math.inf
    try:
        return math.exp(lv)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class SafetyDiagnostics:
    """Where and why the safety-margin loop stopped."""

    k_stop: int
    vr_value: float
    vr_ok: bool
    delta_at_stop: float
    stopped_by: str  # "condition" | "cap" | "degenerate"
    reports: tuple[SensitivityReport, ...] = field(default=(), repr=False)


def safety_margin_lb(
    data,
    dirs: DirectionSet,
    stats: ProjectedStats,
    params: PrivacyParams,
    est: EstimatorPair,
    condition_slack: float = 1.0,
    exact_cap: bool = True,
) -> tuple[int, SafetyDiagnostics]:
    """Certified lower bound on the safety margin.

    Walks k = 2, 3, ... while both the volume condition (VR < delta) and the
    deviation condition (delta_hat_k < eta) hold; on the first failure at k
    returns sm = max(k - 2, 0). The loop also stops at k = floor((n-1)/2)
    (order-statistic indices must stay valid), returning sm = k - 1 there
    since that k was verified. condition_slack < 1 tightens both thresholds
    (eta * slack, delta * slack) for callers who want stricter certification.

    With exact_cap (default) the loop additionally stops once sm is so large
    that the noised test's outcome is decided for every double-precision
    Laplace draw; this never changes the test result, only caps the reported
    sm/k_stop diagnostics.
    """
    if condition_slack <= 0:
        raise ValueError("condition_slack must be positive")
    data = np.asarray(data, dtype=float)
    n = data.shape[0]
    if n < 5:
        raise ValueError("need n >= 5")

    vr_log = log_volume_ratio(stats, params, data.shape[1])
    vr_value = volume_ratio(stats, params, data.shape[1])
    if stats.degenerate:
        diag = SafetyDiagnostics(
            k_stop=2, vr_value=vr_value, vr_ok=False,
            delta_at_stop=math.inf, stopped_by="degenerate",
        )
        return 0, diag

    delta_bar = params.delta * condition_slack
    eta_bar = params.eta * condition_slack
    vr_ok = vr_log < math.log(delta_bar)

    k_cap = (n - 1) // 2
    if exact_cap:
        sm_cap = math.floor(params.test_threshold
                            + (2.0 / params.epsilon) * _LAPLACE_MAX_ABS) + 1
        k_cap = min(k_cap, sm_cap + 1)

    zt = stats.sorted_proj
    if zt is None:
        zt = None  # sensitivity_report will sort projections itself
    inf_scale = stats.inf_sigma if est.scale == "trimmed_ad" else None

    reports: list[SensitivityReport] = []
    k = 2
    stopped_by = "cap"
    delta_at_stop = math.nan
    while k <= k_cap:
        try:
            rep = sensitivity_report(
                data, dirs, k, est, params.tau, params.eta,
                presorted=zt, inf_scale=inf_scale,
            )
            dk = rep.delta_hat
            reports.append(rep)
        except ValueError:
            dk = math.inf  # index range exhausted: bound not certifiable at k
        delta_at_stop = dk
        if not (vr_ok and dk < eta_bar):
            stopped_by = "condition"
            break
        k += 1
    else:
        k = k_cap  # every k up to the cap verified

    if stopped_by == "condition":
        sm = max(k - 2, 0)
    else:
        sm = max(k - 1, 0)
    diag = SafetyDiagnostics(
        k_stop=k,
        vr_value=vr_value,
        vr_ok=bool(vr_ok),
        delta_at_stop=delta_at_stop,
        stopped_by=stopped_by,
        reports=tuple(reports),
    )
    return sm, diag


def ptr_test(
    sm: int,
    params: PrivacyParams,
    rng: np.random.Generator,
    k_stop: int = 0,
    vr_value: float = math.inf,
) -> TestOutcome:
    """Noised threshold test Z = 1{ sm + (2/eps) W > (2/eps) ln(1/(2 delta)) }."""
    if sm < 0:
        raise ValueError("sm must be nonnegative")
    w = sample_laplace(rng)
    passed = sm + (2.0 / params.epsilon) * w > params.test_threshold
    return TestOutcome(sm=sm, noise_w=w, passed=bool(passed),
                       k_stop=k_stop, vr_value=vr_value)


def generic_ptr(
    test: Callable[[object], float],
    release: Callable[[object, np.random.Generator], object],
) -> Callable[[object, np.random.Generator], Released | Abstain]:
    """Compose any pass-probability function with any release mechanism.

    The returned mechanism draws B ~ Bernoulli(test(dataset)); on B = 1 it
    returns Released(release(dataset, rng)), otherwise ABSTAIN.
    """

    def mechanism(dataset, rng: np.random.Generator):
        lam = float(test(dataset))
        if not 0.0 <= lam <= 1.0:
            raise ValueError(f"test must return a probability, got {lam}")
        if rng.random() < lam:
            return Released(release(dataset, rng))
        return ABSTAIN

    return mechanism
