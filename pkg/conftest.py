"""Project-wide pytest configuration and fixtures."""

from collections.abc import Generator

import numpy as np
import pytest

from app.core.config import get_settings
from app.core.logging import setup_logging
from app.features.distance_solver.constraint_operator import _cached_operator


@pytest.fixture(scope="function")
def rng() -> np.random.Generator:
    """Seeded generator so that randomized tests are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def _fresh_caches() -> Generator[None, None, None]:
    """Reset cached settings and operators around every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    _cached_operator.cache_clear()


@pytest.fixture(autouse=True)
def _quiet_logging() -> None:
    """Bind logging to this test's stderr so no test writes to a stream closed by another."""
    setup_logging(log_level="WARNING")
