"""Test fixtures for the dense operator kernel."""

import numpy as np
import pytest

from app.shared.operators.operator_models import ComplexArray


@pytest.fixture
def random_matrix(rng: np.random.Generator) -> ComplexArray:
    """Random complex 4×4 matrix."""
    return rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))


@pytest.fixture
def pauli() -> dict[str, ComplexArray]:
    """Pauli matrices keyed by axis."""
    return {
        "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
        "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
        "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    }
