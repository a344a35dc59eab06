"""Tests for complex-matrix models and validation helpers."""

import numpy as np
import pytest

from app.core.exceptions import ArgumentError, NotHermitianError, ShapeError
from app.shared.operators.operator_models import (
    HermitianMatrix,
    as_complex_array,
    as_square_matrix,
    is_hermitian,
)


def test_as_complex_array_copies_and_freezes() -> None:
    """Test that validated arrays are read-only copies."""
    source = np.eye(2)
    arr = as_complex_array(source, ndim=2)

    assert arr.dtype == np.complex128
    assert not arr.flags.writeable
    source[0, 0] = 5.0
    assert arr[0, 0] == 1.0


def test_as_complex_array_rejects_non_finite() -> None:
    """Test that NaN and infinite entries are refused."""
    with pytest.raises(ArgumentError, match="non-finite"):
        as_complex_array([[1.0, np.nan], [0.0, 1.0]])


def test_as_complex_array_rejects_wrong_rank() -> None:
    """Test the dimension check."""
    with pytest.raises(ShapeError):
        as_complex_array([1.0, 2.0], ndim=2)


def test_as_square_matrix_rejects_rectangular() -> None:
    """Test that rectangular input is a shape error."""
    with pytest.raises(ShapeError, match="square"):
        as_square_matrix(np.zeros((2, 3)))


def test_hermitian_matrix_symmetrizes_input() -> None:
    """Test that construction applies (M + M†)/2."""
    h = HermitianMatrix(entries=[[1.0, 2.0], [0.0, 3.0]])

    assert np.array_equal(h.entries, np.array([[1.0, 1.0], [1.0, 3.0]]))
    assert is_hermitian(h.entries, tol=0.0)
    assert h.dim == 2


def test_hermitian_matrix_strict_mode_rejects() -> None:
    """Test that strict mode refuses non-Hermitian input."""
    with pytest.raises(NotHermitianError):
        HermitianMatrix.from_array([[1.0, 2.0], [0.0, 3.0]], strict=True)


def test_hermitian_matrix_strict_mode_accepts_hermitian() -> None:
    """Test that strict mode keeps Hermitian input as is."""
    m = np.array([[1.0, 1j], [-1j, 2.0]])

    h = HermitianMatrix.from_array(m, strict=True)

    assert np.array_equal(h.entries, m)
