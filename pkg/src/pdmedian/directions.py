"""Random direction sets on the unit sphere.

The supremum over all unit directions in the outlyingness function is
approximated by a maximum over a fixed, seeded set of random directions.
One direction set is sampled per estimator invocation and shared by the
outlyingness, sensitivity and sampler code paths, so every component sees
the same discretized objective.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class DirectionSet:
    """Immutable set of unit vectors discretizing the sphere S^{d-1}.

    vectors has shape (n_dirs, d); every row has Euclidean norm 1 within
    1e-12. Regenerating with the same seed yields bitwise-identical vectors.
    """

    vectors: np.ndarray = field(repr=False)
    seed: int
    d: int

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[0] < 1:
            raise ValueError("vectors must be a nonempty (n_dirs, d) array")
        if v.shape[1] != self.d:
            raise ValueError(f"vectors have length {v.shape[1]}, expected d={self.d}")
        norms = np.linalg.norm(v, axis=1)
        if not np.all(np.abs(norms - 1.0) <= 1e-12):
            raise ValueError("every direction must have unit norm within 1e-12")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def n_dirs(self) -> int:
        return self.vectors.shape[0]


def sample_directions(n_dirs: int, d: int, seed: int) -> DirectionSet:
    """Draw n_dirs directions uniformly on S^{d-1}, deterministically from seed.

    Standard Gaussian vectors normalized to unit length (rotation invariant).
    A zero-norm draw (probability-zero event) is redrawn.
    """
    if n_dirs < 1:
        raise ValueError("n_dirs must be >= 1")
    if d < 1:
        raise ValueError("d must be >= 1")
    rng = np.random.default_rng(seed)
    vecs = rng.standard_normal((n_dirs, d))
    norms = np.linalg.norm(vecs, axis=1)
    while np.any(norms == 0.0):
        bad = norms == 0.0
        vecs[bad] = rng.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(vecs, axis=1)
    vecs /= norms[:, None]
    return DirectionSet(vectors=vecs, seed=seed, d=d)


def project(data: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Project each row of data onto the direction u (inner products)."""
    data = np.asarray(data, dtype=float)
    u = np.asarray(u, dtype=float)
    if data.ndim != 2:
        raise ValueError("data must be an (n, d) matrix")
    if u.ndim != 1 or u.shape[0] != data.shape[1]:
        raise ValueError(
            f"direction has length {u.shape[0] if u.ndim == 1 else u.shape},"
            f" expected {data.shape[1]}"
        )
    return data @ u
