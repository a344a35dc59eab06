"""Domain models for finite spectral triples, states and one-forms."""

from enum import StrEnum
from typing import Annotated

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PlainValidator, model_validator

from app.core.exceptions import InvalidStateError, NotHermitianError, ShapeError
from app.shared.operators.operator_models import (
    HERMITIAN_TOL,
    ComplexArray,
    ComplexMatrix,
    OptionalComplexMatrix,
    as_complex_array,
    hermitian_part,
    is_hermitian,
)

STATE_TOL = 1e-10


class AlgebraMode(StrEnum):
    """Represented algebra: all of Mₙ(ℂ) or its diagonal subalgebra ℂⁿ."""

    FULL = "full"
    DIAGONAL = "diagonal"


def _block_stack(value: object) -> ComplexArray:
    arr = as_complex_array(value, ndim=3, name="block stack")
    if arr.shape[1] != arr.shape[2]:
        raise ShapeError(f"blocks must be square, got shape {arr.shape[1:]}")
    return arr


def _hermitian_stack(value: object) -> ComplexArray:
    arr = _block_stack(value)
    sym = (arr + np.conj(np.swapaxes(arr, 1, 2))) / 2
    sym.setflags(write=False)
    return sym


BlockStack = Annotated[ComplexArray, PlainValidator(_block_stack)]
HermitianStack = Annotated[ComplexArray, PlainValidator(_hermitian_stack)]


class SpectralTripleSpec(BaseModel):
    """Finite spectral triple A = Mₙ(ℂ) (or ℂⁿ), H = ℂⁿ ⊗ ℂᴺ, D = Σ Lᵢ ⊗ Eᵢᵢ.

    ``L`` is the (N, n, n) stack of selfadjoint blocks. D itself is never
    materialized; every computation works block by block.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    L: HermitianStack
    algebra: AlgebraMode = AlgebraMode.FULL

    @model_validator(mode="after")
    def _check_dimensions(self) -> "SpectralTripleSpec":
        if self.L.shape[0] < 1 or self.L.shape[1] < 1:
            raise ShapeError(f"triple needs N ≥ 1 and n ≥ 1, got L of shape {self.L.shape}")
        return self

    @classmethod
    def from_blocks(
        cls,
        blocks: list[object] | ComplexArray,
        algebra: AlgebraMode = AlgebraMode.FULL,
        *,
        strict: bool = False,
    ) -> "SpectralTripleSpec":
        """Build a triple from a list of n×n matrices.

        Args:
            blocks: The Lᵢ, each n×n.
            algebra: Represented algebra.
            strict: Reject non-Hermitian blocks instead of symmetrizing them.

        Raises:
            NotHermitianError: In strict mode, when some Lᵢ is not Hermitian.
        """
        stack = _block_stack(blocks)
        if strict:
            for i, block in enumerate(stack):
                if not is_hermitian(block):
                    raise NotHermitianError(f"L[{i}] is not Hermitian")
        return cls(L=stack, algebra=algebra)

    @property
    def n(self) -> int:
        """Algebra dimension."""
        return int(self.L.shape[1])

    @property
    def N(self) -> int:
        """Number of Dirac blocks."""
        return int(self.L.shape[0])

    def fingerprint(self) -> tuple[bytes, tuple[int, ...], str]:
        """Hashable content key (raw bytes, shape, algebra)."""
        return (np.ascontiguousarray(self.L).tobytes(), self.L.shape, self.algebra.value)


class DensityMatrix(BaseModel):
    """State of Mₙ(ℂ) as a density matrix: Hermitian, trace one, positive semidefinite."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: ComplexMatrix

    @model_validator(mode="after")
    def _check_state(self) -> "DensityMatrix":
        rho = self.entries
        if rho.shape[0] != rho.shape[1]:
            raise ShapeError(f"density matrix must be square, got shape {rho.shape}")
        if not is_hermitian(rho, tol=STATE_TOL):
            raise InvalidStateError("density matrix is not Hermitian")
        trace = float(np.trace(rho).real)
        if abs(trace - 1.0) > STATE_TOL:
            raise InvalidStateError(f"density matrix trace is {trace!r}, expected 1")
        smallest = float(np.linalg.eigvalsh(hermitian_part(rho))[0])
        if smallest < -STATE_TOL:
            raise InvalidStateError(f"density matrix has negative eigenvalue {smallest:.3e}")
        return self

    @classmethod
    def pure(cls, psi: object) -> "DensityMatrix":
        """Pure state |ψ⟩⟨ψ| / ⟨ψ|ψ⟩."""
        vec = as_complex_array(psi, ndim=1, name="state vector")
        norm_sq = float(np.vdot(vec, vec).real)
        if norm_sq == 0.0:
            raise InvalidStateError("state vector is zero")
        return cls(entries=hermitian_part(np.outer(vec, vec.conj()) / norm_sq))

    @classmethod
    def diagonal(cls, weights: object) -> "DensityMatrix":
        """Classical state diag(p) from a probability vector."""
        p = np.asarray(weights, dtype=np.float64)
        if p.ndim != 1:
            raise ShapeError(f"weights must be a vector, got shape {p.shape}")
        return cls(entries=np.diag(p).astype(np.complex128))

    @property
    def dim(self) -> int:
        """Matrix dimension."""
        return int(self.entries.shape[0])


class OneForm(BaseModel):
    """Element (u₁, …, u_N) of the bimodule of generalized 1-forms."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    blocks: BlockStack

    @property
    def N(self) -> int:
        """Number of blocks."""
        return int(self.blocks.shape[0])

    @property
    def n(self) -> int:
        """Block dimension."""
        return int(self.blocks.shape[1])

    def is_antihermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        """Check uᵢ† = −uᵢ for every block."""
        return all(is_hermitian(1j * block, tol=tol) for block in self.blocks)

    @classmethod
    def zeros(cls, n: int, N: int) -> "OneForm":
        """Zero one-form with N blocks of size n×n."""
        return cls(blocks=np.zeros((N, n, n), dtype=np.complex128))


class KernelBasis(BaseModel):
    """Frobenius-orthonormal basis of ker∇ inside the Hermitian part of the algebra."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    elements: BlockStack
    singular_values: list[float] = Field(
        default_factory=list, description="Singular values of ∇ on the Hermitian algebra"
    )
    threshold: float = Field(default=0.0, description="Nullspace cutoff that was applied")

    @property
    def dimension(self) -> int:
        """Dimension of the kernel."""
        return int(self.elements.shape[0])


class FiniteDistanceReport(BaseModel):
    """Outcome of the kernel-orthogonality test for a pair of states.

    ``witness`` is the orthogonal projection of ρ₁ − ρ₂ onto ker∇. It is
    zero exactly when the distance is finite, and otherwise it is the kernel
    element along which the two states can be separated without bound.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    finite: bool
    kernel_dimension: int
    connected: bool
    max_violation: float = Field(..., description="max_k |Tr((ρ₁−ρ₂) k)| over the kernel basis")
    witness: OptionalComplexMatrix = None
    witness_pairing: float | None = Field(default=None, description="Tr((ρ₁−ρ₂) witness)")
