import numpy as np
import pytest

from pdmedian.directions import DirectionSet


@pytest.fixture
def line():
    """The single possible direction in 1-d (projections = raw values)."""
    return DirectionSet(vectors=np.array([[1.0]]), seed=0, d=1)


@pytest.fixture
def axes2():
    """Canonical axes in 2-d, for hand-checkable projections."""
    return DirectionSet(vectors=np.eye(2), seed=0, d=2)
