"""Test fixtures for transport on the line."""

import pytest

from app.features.transport_line.transport_line_models import DiscreteMeasure1D


@pytest.fixture
def split_measure() -> DiscreteMeasure1D:
    """½δ₋₁ + ½δ₁."""
    return DiscreteMeasure1D(atoms=[-1.0, 1.0], weights=[0.5, 0.5])
