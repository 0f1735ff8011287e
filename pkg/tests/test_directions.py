import numpy as np
import pytest

from pdmedian.directions import DirectionSet, project, sample_directions


def test_shapes_and_unit_norms():
    ds = sample_directions(64, 3, seed=7)
    assert ds.vectors.shape == (64, 3)
    assert ds.n_dirs == 64
    assert ds.d == 3
    np.testing.assert_allclose(
        np.linalg.norm(ds.vectors, axis=1), 1.0, rtol=0, atol=1e-12
    )


def test_seed_determinism_bitwise():
    a = sample_directions(32, 4, seed=123).vectors
    b = sample_directions(32, 4, seed=123).vectors
    assert a.tobytes() == b.tobytes()


def test_different_seeds_differ():
    a = sample_directions(8, 2, seed=0).vectors
    b = sample_directions(8, 2, seed=1).vectors
    assert a.tobytes() != b.tobytes()


def test_one_dimensional_directions_are_signs():
    ds = sample_directions(16, 1, seed=5)
    assert set(np.unique(ds.vectors)) <= {-1.0, 1.0}


def test_vectors_are_write_protected():
    ds = sample_directions(4, 2, seed=0)
    with pytest.raises(ValueError):
        ds.vectors[0, 0] = 2.0


def test_rejects_non_unit_vectors():
    with pytest.raises(ValueError):
        DirectionSet(vectors=np.array([[1.0, 1.0]]), seed=0, d=2)


def test_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        DirectionSet(vectors=np.eye(2), seed=0, d=3)


def test_rejects_empty_set():
    with pytest.raises(ValueError):
        DirectionSet(vectors=np.zeros((0, 2)), seed=0, d=2)


def test_sample_argument_validation():
    with pytest.raises(ValueError):
        sample_directions(0, 2, seed=0)
    with pytest.raises(ValueError):
        sample_directions(4, 0, seed=0)


def test_project_matches_inner_products():
    rng = np.random.default_rng(0)
    data = rng.standard_normal((10, 3))
    u = np.array([1.0, 0.0, 0.0])
    np.testing.assert_array_equal(project(data, u), data[:, 0])
    v = rng.standard_normal(3)
    v /= np.linalg.norm(v)
    np.testing.assert_allclose(project(data, v), data @ v, rtol=0, atol=0)


def test_project_validates_shapes():
    with pytest.raises(ValueError):
        project(np.zeros((3, 2)), np.zeros(3))
    with pytest.raises(ValueError):
        project(np.zeros(3), np.zeros(3))
