"""Test fixtures for the distance solver."""

import numpy as np
import pytest

from app.shared.triple.triple_factory import random_density_matrix, random_triple
from app.shared.triple.triple_models import DensityMatrix, SpectralTripleSpec


@pytest.fixture
def basis_states() -> tuple[DensityMatrix, DensityMatrix]:
    """diag(1, 0) and diag(0, 1)."""
    return DensityMatrix.diagonal([1.0, 0.0]), DensityMatrix.diagonal([0.0, 1.0])


@pytest.fixture
def connected_problem(
    rng: np.random.Generator,
) -> tuple[SpectralTripleSpec, DensityMatrix, DensityMatrix]:
    """Random connected triple with n = 3, N = 2 and two full-rank states."""
    t = random_triple(rng, 3, 2)
    return t, random_density_matrix(rng, 3), random_density_matrix(rng, 3)
