"""Seeded synthetic data generators for the benchmark distributions.

Three families: clean Gaussian, shift-contaminated Gaussian (a fixed
fraction of rows moved to a shifted mean, unit covariance kept), and a
product of independent Cauchy marginals. Each generator returns the dataset
together with the estimation target (the clean center), and is a pure
function of its seed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

__all__ = [
    "Gaussian",
    "ContaminatedGaussian",
    "CauchyProduct",
    "DataSpec",
    "generate",
    "dump_csv",
]


@dataclass(frozen=True)
class Gaussian:
    """N(mean, cov); cov None means identity, a vector means a diagonal."""

    mean: Union[float, np.ndarray] = 0.0
    cov: Optional[np.ndarray] = None

    name = "gaussian"

    def __post_init__(self):
        if self.cov is not None:
            c = np.asarray(self.cov, dtype=float)
            if c.ndim == 1:
                if np.any(c <= 0):
                    raise ValueError("diagonal covariance must be positive")
            elif c.ndim == 2:
                try:
                    np.linalg.cholesky(c)
                except np.linalg.LinAlgError:
                    raise ValueError("covariance must be positive definite")
            else:
                raise ValueError("cov must be a vector (diagonal) or a matrix")
            object.__setattr__(self, "cov", c)


@dataclass(frozen=True)
class ContaminatedGaussian:
    """Standard Gaussian with floor(frac * n) rows recentered at shift.

    Contaminated rows keep unit covariance; the estimation target is the
    clean center (the origin). Placement of contaminated rows is a seeded
    permutation, so they are not positionally clustered.
    """

    frac: float
    shift: Union[float, np.ndarray]

    name = "contaminated"

    def __post_init__(self):
        if not 0 <= self.frac < 0.5:
            raise ValueError("frac must be in [0, 1/2)")


@dataclass(frozen=True)
class CauchyProduct:
    """Independent Cauchy(location, scale) marginals via the tan transform."""

    location: Union[float, np.ndarray] = 0.0
    scale: float = 1.0

    name = "cauchy"

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")


Distribution = Union[Gaussian, ContaminatedGaussian, CauchyProduct]


@dataclass(frozen=True)
class DataSpec:
    """One dataset request: distribution, shape, seed."""

    dist: Distribution
    n: int
    d: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if not isinstance(self.dist, (Gaussian, ContaminatedGaussian, CauchyProduct)):
            raise ValueError("unknown distribution")


def _broadcast(v, d: int, what: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0:
        arr = np.full(d, float(arr))
    if arr.shape != (d,):
        raise ValueError(f"{what} must be a scalar or length-{d} vector")
    return arr


def generate(spec: DataSpec) -> tuple[np.ndarray, np.ndarray]:
    """Draw the dataset; returns (rows, true_location).

    The base noise is always drawn before any permutation or shift, so the
    clean portion of a contaminated sample matches the clean sample from the
    same seed row-for-row.
    """
    rng = np.random.default_rng(spec.seed)
    n, d = spec.n, spec.d
    dist = spec.dist

    if isinstance(dist, Gaussian):
        z = rng.standard_normal((n, d))
        mean = _broadcast(dist.mean, d, "mean")
        if dist.cov is None:
            x = z
        elif dist.cov.ndim == 1:
            if dist.cov.shape != (d,):
                raise ValueError("diagonal covariance has wrong length")
            x = z * np.sqrt(dist.cov)
        else:
            if dist.cov.shape != (d, d):
                raise ValueError("covariance has wrong shape")
            x = z @ np.linalg.cholesky(dist.cov).T
        return x + mean, mean

    if isinstance(dist, ContaminatedGaussian):
        z = rng.standard_normal((n, d))
        shift = _broadcast(dist.shift, d, "shift")
        m = math.floor(dist.frac * n)
        perm = rng.permutation(n)
        x = z.copy()
        x[perm[:m]] += shift
        return x, np.zeros(d)

    # CauchyProduct
    u = rng.random((n, d))
    location = _broadcast(dist.location, d, "location")
    x = location + dist.scale * np.tan(np.pi * (u - 0.5))
    return x, location


def dump_csv(data: np.ndarray, path) -> None:
    """Write one observation per row, coordinates as columns, no header."""
    data = np.asarray(data, dtype=float)
    if data.ndim != 2:
        raise ValueError("data must be 2-d")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in data:
            writer.writerow([repr(float(v)) for v in row])
