"""Shared fixtures for the GHZ entanglement tests."""
import numpy as np
import pytest

from ghz_entanglement.linalg import DensityMatrix


@pytest.fixture
def rng():
    """Return a seeded random generator."""
    return np.random.default_rng(20240917)


@pytest.fixture
def random_density(rng):
    """Return a factory for random full-rank density matrices."""

    def _make(dim):
        gaussian = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        positive = gaussian @ gaussian.conj().T
        positive = (positive + positive.conj().T) / 2
        return DensityMatrix(positive / np.trace(positive).real)

    return _make
