"""Closed-form bounds on how much k row replacements can move the projected
location and scale estimates, and the derived outlyingness-deviation bound.

All bounds are order-statistic gap computations on the projected samples:
replacing k points shifts any order-statistic rank by at most k, so the
estimator after contamination is trapped inside a window of the original
order statistics. The reported quantities are

* s_mu:    sup over directions of the worst location movement,
* s_sigma: sup over directions of the worst scale movement,
* b_hat:   a lower bound on the contaminated scale (0 when data collapse),
* delta_hat = ((tau + eta) * s_sigma + s_mu) / b_hat, the resulting bound on
  how much the outlyingness value of any point in the tau-level-set can move.

Soundness (realized change <= bound under exhaustive k-point replacement) is
enforced by the test suite on small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .directions import DirectionSet
from .univariate import EstimatorPair

__all__ = [
    "SensitivityReport",
    "sens_median",
    "sens_mad",
    "sens_trimmed",
    "delta_hat",
    "sensitivity_report",
]

@dataclass(frozen=True)
class SensitivityReport:
    """Per-k movement bounds for one (data, direction set, estimator pair)."""

    k: int
    s_mu: float
    s_sigma: float
    b_hat: float
    delta_hat: float

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        for name in ("s_mu", "s_sigma", "b_hat"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


def _sorted_projections(data: np.ndarray, dirs: DirectionSet) -> np.ndarray:
    """Ascending projections per direction, shape (n_dirs, n)."""
    data = np.asarray(data, dtype=float)
    if data.ndim != 2 or data.shape[0] == 0:
        raise ValueError("data must be a nonempty (n, d) matrix")
    if np.isnan(data).any():
        raise ValueError("data contains NaN")
    proj = data @ dirs.vectors.T
    return np.ascontiguousarray(np.sort(proj, axis=0).T)


def _check_median_window(n: int, k: int) -> int:
    m = (n + 1) // 2  # 1-based lower-median rank
    if k < 1:
        raise ValueError("k must be >= 1")
    if m + k > n or m - k < 1:
        raise ValueError(f"k={k} leaves order-statistic indices out of [1, {n}]")
    return m


def _median_gap_sorted(zt: np.ndarray, k: int) -> float:
    """sup_u max(Z_(m+k) - Z_(m), Z_(m) - Z_(m-k)) over presorted projections."""
    n = zt.shape[1]
    m = _check_median_window(n, k)
    up = zt[:, m + k - 1] - zt[:, m - 1]
    dn = zt[:, m - 1] - zt[:, m - k - 1]
    return float(np.maximum(up, dn).max())


def _kth_absdev(z: np.ndarray, j: int, z0s: np.ndarray) -> np.ndarray:
    """j-th smallest (1-based) of {|z_i - z0|} for each center z0.

    The j points nearest a center form a contiguous window of the sorted
    sample, so the j-th absolute deviation is the minimal window radius
    min_i max(z0 - z[i], z[i+j-1] - z0). That maximum is V-shaped in i and
    crosses where z[i] + z[i+j-1] = 2*z0, located by binary search.
    """
    n = z.shape[0]
    w = z[: n - j + 1] + z[j - 1 :]  # nondecreasing window-sum array
    pos = np.searchsorted(w, 2.0 * z0s)
    lo = np.clip(pos - 1, 0, n - j)
    hi = np.clip(pos, 0, n - j)
    f_lo = np.maximum(z0s - z[lo], z[lo + j - 1] - z0s)
    f_hi = np.maximum(z0s - z[hi], z[hi + j - 1] - z0s)
    return np.minimum(f_lo, f_hi)


def _mad_window_sorted(zt: np.ndarray, k: int) -> tuple[float, float]:
    """(s_sigma, b_hat) for the MAD under k replacements, presorted projections.

    Replacing k points leaves n-k of the original deviations in place, no
    matter which center they are measured about, so for any center z the
    contaminated m-th smallest absolute deviation is trapped between the
    original Y_(m-k)(z) and Y_(m+k)(z), where Y_(j)(z) is the j-th smallest
    of {|z_i - z|}. The contaminated median itself stays inside
    [Z_(m-k), Z_(m+k)], hence

        mad' in [inf_z Y_(m-k)(z), sup_z Y_(m+k)(z)],  z over that window.

    Y_(j) is 1-Lipschitz in z (order statistics of 1-Lipschitz functions),
    so over each gap between consecutive window order statistics the sup is
    at most the tent value (y_left + y_right + gap)/2 and the inf at least
    (y_left + y_right - gap)/2. That turns the continuous extremes into a
    finite scan over the 2k+1 window order statistics.
    """
    n = zt.shape[1]
    m = _check_median_window(n, k)
    s_sigma = 0.0
    b_hat = math.inf
    for z in zt:
        cands = z[m - k - 1 : m + k]  # order statistics Z_(m-k) .. Z_(m+k)
        gaps = np.diff(cands)
        y_up = _kth_absdev(z, m + k, cands)
        y_dn = _kth_absdev(z, m - k, cands)
        sup_env = max(
            float(y_up.max()),
            float(((y_up[:-1] + y_up[1:] + gaps) * 0.5).max()),
        )
        inf_env = min(
            float(y_dn.min()),
            float(((y_dn[:-1] + y_dn[1:] - gaps) * 0.5).min()),
        )
        inf_env = max(inf_env, 0.0)  # deviations are nonnegative
        mad0 = float(_kth_absdev(z, m, z[m - 1 : m])[0])
        s_dir = max(sup_env - mad0, mad0 - inf_env)
        if s_dir > s_sigma:
            s_sigma = s_dir
        if inf_env < b_hat:
            b_hat = inf_env
    return s_sigma, b_hat


def _trimmed_gap_sorted(zt: np.ndarray, k: int, alpha: float) -> tuple[float, float]:
    """(s_mu, s_sigma) for (trimmed_mean, trimmed_ad) under k replacements.

    With g = floor(n*alpha) trimmed per side, every retained contaminated
    order statistic satisfies Z_(j-k) <= W_(j) <= Z_(j+k) (rank shift by at
    most k; needs k <= g for the indices to stay in [1, n]). Summing the
    one-sided slacks over the retained ranks telescopes to the k boundary
    gaps on each side:

        up = sum_{i=1..k} Z_(n-g+i) - Z_(g+i)       (room to move up)
        dn = sum_{i=1..k} Z_(n-g+1-i) - Z_(g+1-i)   (room to move down)

    so the trimmed mean moves by at most max(up, dn)/(n-2g). The trimmed
    absolute deviation picks up both the per-rank movement, summing to at
    most the per-rank max of the two slacks, and the recentring shift,
    giving s_sigma = sum_j max(slack_up_j, slack_dn_j)/(n-2g) + s_mu.
    """
    n = zt.shape[1]
    g = math.floor(n * alpha)
    retained = n - 2 * g
    if retained < 1:
        raise ValueError("trimming removes every point")
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > g:
        raise ValueError(
            f"k={k} puts retained-window indices out of range (needs k <= {g})"
        )
    mid = zt[:, g : n - g]
    slack_dn = mid - zt[:, g - k : n - g - k]  # Z_(j) - Z_(j-k), j retained
    slack_up = zt[:, g + k : n - g + k] - mid  # Z_(j+k) - Z_(j)
    up = slack_up.sum(axis=1)
    dn = slack_dn.sum(axis=1)
    s_mu_dir = np.maximum(up, dn) / retained
    s_sigma_dir = np.maximum(slack_up, slack_dn).sum(axis=1) / retained + s_mu_dir
    return float(s_mu_dir.max()), float(s_sigma_dir.max())


def sens_median(data, dirs: DirectionSet, k: int) -> float:
    """Worst movement of the projected median under k arbitrary replacements."""
    return _median_gap_sorted(_sorted_projections(data, dirs), k)


def sens_mad(data, dirs: DirectionSet, k: int) -> tuple[float, float]:
    """(s_sigma, b_hat) for the projected MAD under k arbitrary replacements."""
    return _mad_window_sorted(_sorted_projections(data, dirs), k)


def sens_trimmed(data, dirs: DirectionSet, k: int, alpha: float) -> tuple[float, float]:
    """(s_mu, s_sigma) for projected trimmed mean / trimmed AD under k replacements."""
    return _trimmed_gap_sorted(_sorted_projections(data, dirs), k, alpha)


def delta_hat(s_mu: float, s_sigma: float, b_hat: float, tau: float, eta: float) -> float:
    """Outlyingness-deviation bound ((tau+eta)*s_sigma + s_mu)/b_hat; +inf at b_hat=0."""
    if b_hat <= 0.0:
        return math.inf
    return ((tau + eta) * s_sigma + s_mu) / b_hat


def sensitivity_report(
    data,
    dirs: DirectionSet,
    k: int,
    est: EstimatorPair,
    tau: float,
    eta: float,
    presorted: np.ndarray | None = None,
    inf_scale: float | None = None,
) -> SensitivityReport:
    """Full per-k report for the pairs that support a closed-form bound.

    (median, mad) uses the order-statistic window bounds directly.
    (trimmed_mean, trimmed_ad) lower-bounds the contaminated scale by
    inf_u tad_u - s_sigma (floored at 0), which needs inf_scale = inf over
    directions of the uncontaminated trimmed AD.
    """
    zt = _sorted_projections(data, dirs) if presorted is None else presorted
    if (est.location, est.scale) == ("median", "mad"):
        s_mu = _median_gap_sorted(zt, k)
        s_sigma, b_hat = _mad_window_sorted(zt, k)
    elif (est.location, est.scale) == ("trimmed_mean", "trimmed_ad"):
        s_mu, s_sigma = _trimmed_gap_sorted(zt, k, est.alpha)
        if inf_scale is None:
            raise ValueError("inf_scale required for the trimmed estimator pair")
        b_hat = max(0.0, inf_scale - s_sigma)
    else:
        raise ValueError(
            f"no sensitivity bound available for estimator pair "
            f"({est.location}, {est.scale})"
        )
    return SensitivityReport(
        k=k,
        s_mu=s_mu,
        s_sigma=s_sigma,
        b_hat=b_hat,
        delta_hat=delta_hat(s_mu, s_sigma, b_hat, tau, eta),
    )
