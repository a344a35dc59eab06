"""Test fixtures for spectral triples and states."""

import pytest

from app.shared.triple.triple_factory import two_point_triple
from app.shared.triple.triple_models import DensityMatrix, SpectralTripleSpec


@pytest.fixture
def two_point() -> SpectralTripleSpec:
    """L = 2σx."""
    return two_point_triple(2.0)


@pytest.fixture
def basis_states() -> tuple[DensityMatrix, DensityMatrix]:
    """diag(1, 0) and diag(0, 1)."""
    return DensityMatrix.diagonal([1.0, 0.0]), DensityMatrix.diagonal([0.0, 1.0])
