"""Domain models for dense complex matrices."""

from typing import Annotated

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, PlainValidator

from app.core.exceptions import ArgumentError, NotHermitianError, ShapeError

ComplexArray = npt.NDArray[np.complex128]
RealArray = npt.NDArray[np.float64]

HERMITIAN_TOL = 1e-12


def as_complex_array(value: object, *, ndim: int | None = None, name: str = "matrix") -> ComplexArray:
    """Copy a value into a read-only complex128 array after shape and finiteness checks.

    Args:
        value: Array-like input (nested lists, numpy array).
        ndim: Required number of dimensions, or None for any.
        name: Label used in error messages.

    Returns:
        A read-only complex128 copy of the input.

    Raises:
        ShapeError: If the input is not numeric or has the wrong number of dimensions.
        ArgumentError: If any entry is NaN or infinite.
    """
    try:
        arr = np.array(value, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise ShapeError(f"{name} is not a numeric array: {e}") from e
    if ndim is not None and arr.ndim != ndim:
        raise ShapeError(f"{name} must have {ndim} dimensions, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ArgumentError(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


def as_square_matrix(value: object, *, name: str = "matrix") -> ComplexArray:
    """Validate a square complex matrix.

    Raises:
        ShapeError: If the matrix is not square.
    """
    arr = as_complex_array(value, ndim=2, name=name)
    if arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {arr.shape}")
    return arr


def hermitian_part(m: ComplexArray) -> ComplexArray:
    """Return (m + m†)/2, which is exactly Hermitian in floating point."""
    return (m + m.conj().T) / 2


def is_hermitian(m: ComplexArray, tol: float = HERMITIAN_TOL) -> bool:
    """Check m = m† entrywise within an absolute tolerance."""
    return m.shape[0] == m.shape[1] and bool(np.all(np.abs(m - m.conj().T) <= tol))


def as_real_array(value: object, *, name: str = "array") -> RealArray:
    """Copy a value into a read-only float64 array.

    Raises:
        ShapeError: If the input is not a real numeric array.
    """
    try:
        arr = np.array(value, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise ShapeError(f"{name} is not a real numeric array: {e}") from e
    arr.setflags(write=False)
    return arr


def _symmetrized(value: object) -> ComplexArray:
    arr = hermitian_part(as_square_matrix(value, name="Hermitian matrix"))
    arr.setflags(write=False)
    return arr


def _optional_matrix(value: object) -> ComplexArray | None:
    return None if value is None else as_complex_array(value, ndim=2)


ComplexMatrix = Annotated[ComplexArray, PlainValidator(lambda v: as_complex_array(v, ndim=2))]
OptionalComplexMatrix = Annotated[ComplexArray | None, PlainValidator(_optional_matrix)]
HermitianEntries = Annotated[ComplexArray, PlainValidator(_symmetrized)]
RealArrayField = Annotated[RealArray, PlainValidator(as_real_array)]
OptionalRealArrayField = Annotated[
    RealArray | None, PlainValidator(lambda v: None if v is None else as_real_array(v))
]


class HermitianMatrix(BaseModel):
    """Selfadjoint n×n matrix.

    Inputs are symmetrized to (M + M†)/2 at construction, after which the
    entries are exactly Hermitian. Use ``from_array(..., strict=True)`` to
    reject inputs that are not Hermitian within 1e-12 instead.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: HermitianEntries

    @classmethod
    def from_array(cls, value: object, *, strict: bool = False) -> "HermitianMatrix":
        """Build a Hermitian matrix, optionally rejecting non-Hermitian input.

        Args:
            value: Square array-like input.
            strict: Reject instead of symmetrizing when the input is not Hermitian.

        Returns:
            The validated Hermitian matrix.

        Raises:
            NotHermitianError: In strict mode, if ‖M − M†‖_max > 1e-12.
        """
        arr = as_square_matrix(value, name="Hermitian matrix")
        if strict and not is_hermitian(arr):
            deviation = float(np.max(np.abs(arr - arr.conj().T)))
            raise NotHermitianError(f"matrix is not Hermitian (max |M - M†| = {deviation:.3e})")
        return cls(entries=arr)

    @property
    def dim(self) -> int:
        """Matrix dimension."""
        return int(self.entries.shape[0])
