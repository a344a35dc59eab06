"""Test fixtures for the command-line layer."""

from collections.abc import Callable
from pathlib import Path

import pytest

from app.cli.converters import serialize_problem
from app.cli.generators import generate_two_point
from app.shared.triple.triple_factory import SIGMA_X, SIGMA_Z
from app.shared.triple.triple_models import DensityMatrix, SpectralTripleSpec

WriteFile = Callable[[str, str], str]


@pytest.fixture
def write_file(tmp_path: Path) -> WriteFile:
    """Write text under tmp_path and return the path as a string."""

    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def two_point_file(write_file: WriteFile) -> str:
    """Problem file for L = σx with the basis states."""
    return write_file("two_point.json", generate_two_point(1.0).model_dump_json(indent=2))


@pytest.fixture
def pauli_z_file(write_file: WriteFile) -> str:
    """Problem file for L = σz with its eigenstates, at infinite distance."""
    text = serialize_problem(
        SpectralTripleSpec(L=SIGMA_Z[None]),
        DensityMatrix.diagonal([1.0, 0.0]),
        DensityMatrix.diagonal([0.0, 1.0]),
    )
    return write_file("pauli_z.json", text)


@pytest.fixture
def triple_only_file(write_file: WriteFile) -> str:
    """Problem file for L = σx without states."""
    return write_file("triple_only.json", serialize_problem(SpectralTripleSpec(L=SIGMA_X[None])))
