"""Robust univariate location and scale estimators for projected samples.

Conventions used throughout the package:

* order statistics are 1-based on the ascending sort of the multiset
  (duplicates kept);
* the median is the lower sample median X_(floor((n+1)/2)), no midpoint
  interpolation, so that the sensitivity bounds can index order statistics
  at floor((n+1)/2) +- k;
* trimming removes floor(n*alpha) points from each tail and normalizes by
  the number of points actually retained, keeping the estimator a convex
  combination of observations;
* NaN input is rejected, never silently sorted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "median",
    "mad",
    "trimmed_mean",
    "trimmed_ad",
    "iqr",
    "EstimatorPair",
]


def _as_sample(sample, min_size: int = 1) -> np.ndarray:
    a = np.asarray(sample, dtype=float).ravel()
    if a.size < min_size:
        raise ValueError(f"sample must have at least {min_size} point(s), got {a.size}")
    if np.isnan(a).any():
        raise ValueError("sample contains NaN")
    return a


def median(sample) -> float:
    """Lower sample median: X_(floor((n+1)/2)) in 1-based sorted order."""
    a = _as_sample(sample)
    m = (a.size + 1) // 2
    return float(np.partition(a, m - 1)[m - 1])


def mad(sample) -> float:
    """Median absolute deviation: lower median of |X_i - median(sample)|."""
    a = _as_sample(sample)
    return median(np.abs(a - median(a)))


def _trim_bounds(n: int, alpha: float) -> tuple[int, int]:
    if not 0.0 < alpha < 0.5:
        raise ValueError(f"alpha must be in (0, 1/2), got {alpha}")
    g = math.floor(n * alpha)
    if n - 2 * g < 1:
        raise ValueError("trimming removes every point")
    return g, n - g


def trimmed_mean(sample, alpha: float) -> float:
    """Mean of the retained order statistics X_(g+1), ..., X_(n-g), g = floor(n*alpha)."""
    a = _as_sample(sample)
    g, hi = _trim_bounds(a.size, alpha)
    return float(np.mean(np.sort(a)[g:hi]))


def trimmed_ad(sample, alpha: float) -> float:
    """Trimmed mean absolute deviation about the trimmed mean.

    Averages |X_(i) - trimmed_mean| over the same retained index range used
    by trimmed_mean (deviations of the retained order statistics, not a
    re-trimming of the deviations).
    """
    a = _as_sample(sample)
    g, hi = _trim_bounds(a.size, alpha)
    kept = np.sort(a)[g:hi]
    return float(np.mean(np.abs(kept - np.mean(kept))))


def iqr(sample) -> float:
    """Interquartile range via the left-continuous empirical quantile.

    F^{-1}(q) = inf{x : F_hat(x) >= q} = X_(ceil(n*q)) for q in (0, 1];
    a single observation has both quartiles equal to it, so iqr 0.
    """
    a = _as_sample(sample)
    srt = np.sort(a)
    n = a.size

    def q(p: float) -> float:
        return float(srt[math.ceil(n * p) - 1])

    return q(0.75) - q(0.25)


_LOCATIONS = ("median", "trimmed_mean")
_SCALES = ("mad", "trimmed_ad", "iqr")


@dataclass(frozen=True)
class EstimatorPair:
    """A (location, scale) estimator choice applied to every projected sample.

    location: "median" or "trimmed_mean"; scale: "mad", "trimmed_ad" or "iqr".
    alpha is required when either member is trimmed.
    """

    location: str = "median"
    scale: str = "mad"
    alpha: float | None = None

    def __post_init__(self):
        if self.location not in _LOCATIONS:
            raise ValueError(f"unknown location estimator {self.location!r}")
        if self.scale not in _SCALES:
            raise ValueError(f"unknown scale estimator {self.scale!r}")
        trimmed = self.location == "trimmed_mean" or self.scale == "trimmed_ad"
        if trimmed:
            if self.alpha is None:
                raise ValueError("alpha required for trimmed estimators")
            if not 0.0 < self.alpha < 0.5:
                raise ValueError(f"alpha must be in (0, 1/2), got {self.alpha}")

    def location_of(self, sample) -> float:
        if self.location == "median":
            return median(sample)
        return trimmed_mean(sample, self.alpha)

    def scale_of(self, sample) -> float:
        if self.scale == "mad":
            return mad(sample)
        if self.scale == "trimmed_ad":
            return trimmed_ad(sample, self.alpha)
        return iqr(sample)


MED_MAD = EstimatorPair(location="median", scale="mad")


def tm_tad(alpha: float) -> EstimatorPair:
    return EstimatorPair(location="trimmed_mean", scale="trimmed_ad", alpha=alpha)
