"""Derivation ∇a = [D, a], its adjoint, and the kernel analysis of a finite triple.

All maps are real-linear and use the inner product ⟨x, y⟩ = Re Tr(x†y).
Hermitian algebra elements are handled in Frobenius-orthonormal real
coordinates (see ``hermitian_basis``); one-forms in interleaved (Re, Im)
coordinates, which are orthonormal for the same inner product.
"""

from functools import lru_cache

import numpy as np
import scipy.linalg as sla

from app.core.exceptions import ModeError, ShapeError
from app.core.logging import get_logger
from app.shared.operators.operator_core import block_operator_norms
from app.shared.operators.operator_models import (
    ComplexArray,
    HermitianMatrix,
    RealArray,
    as_complex_array,
)
from app.shared.triple.triple_models import (
    AlgebraMode,
    DensityMatrix,
    FiniteDistanceReport,
    KernelBasis,
    OneForm,
    SpectralTripleSpec,
)

logger = get_logger(__name__)

KERNEL_RTOL = 1e-9
FINITE_DISTANCE_TOL = 1e-9
DIAGONAL_TOL = 1e-12


@lru_cache(maxsize=64)
def hermitian_basis(n: int, algebra: AlgebraMode) -> ComplexArray:
    """Frobenius-orthonormal real basis of the Hermitian part of the algebra.

    Full mode: E_kk, (E_kl + E_lk)/√2 and i(E_kl − E_lk)/√2 for k < l (n² elements).
    Diagonal mode: E_kk (n elements).

    Returns:
        Read-only array of shape (m, n, n).
    """
    elements: list[ComplexArray] = []
    for k in range(n):
        e = np.zeros((n, n), dtype=np.complex128)
        e[k, k] = 1.0
        elements.append(e)
    if algebra is AlgebraMode.FULL:
        r = 1.0 / np.sqrt(2.0)
        for k in range(n):
            for l in range(k + 1, n):
                sym = np.zeros((n, n), dtype=np.complex128)
                sym[k, l] = sym[l, k] = r
                elements.append(sym)
                skew = np.zeros((n, n), dtype=np.complex128)
                skew[k, l] = 1j * r
                skew[l, k] = -1j * r
                elements.append(skew)
    basis = np.stack(elements)
    basis.setflags(write=False)
    return basis


def to_coords(m: ComplexArray, basis: ComplexArray) -> RealArray:
    """Real coordinates ⟨B_j, m⟩ = Re Tr(B_j† m) against an orthonormal basis."""
    return np.einsum("kij,ij->k", basis.conj(), m).real


def from_coords(coords: RealArray, basis: ComplexArray) -> ComplexArray:
    """Matrix Σ_j c_j B_j."""
    return np.einsum("k,kij->ij", coords, basis)


def _element(t: SpectralTripleSpec, a: HermitianMatrix | ComplexArray) -> ComplexArray:
    matrix = a.entries if isinstance(a, HermitianMatrix) else as_complex_array(a, ndim=2)
    if matrix.shape != (t.n, t.n):
        raise ShapeError(f"element of shape {matrix.shape} for a triple with n={t.n}")
    if t.algebra is AlgebraMode.DIAGONAL:
        off_diagonal = matrix - np.diag(np.diag(matrix))
        if np.any(np.abs(off_diagonal) > DIAGONAL_TOL):
            raise ModeError("element is not diagonal but the triple represents the diagonal algebra")
    return matrix


def _one_form_blocks(t: SpectralTripleSpec, u: OneForm | ComplexArray) -> ComplexArray:
    blocks = u.blocks if isinstance(u, OneForm) else as_complex_array(u, ndim=3, name="one-form")
    if blocks.shape != t.L.shape:
        raise ShapeError(f"one-form of shape {blocks.shape} for a triple with L of shape {t.L.shape}")
    return blocks


def nabla_blocks(L: ComplexArray, a: ComplexArray) -> ComplexArray:
    """Stack of commutators [Lᵢ, a] without validation (inner-loop helper)."""
    return L @ a - a @ L


def nabla(t: SpectralTripleSpec, a: HermitianMatrix | ComplexArray) -> OneForm:
    """∇a = ([L₁, a], …, [L_N, a]).

    Accepts any n×n matrix (the general extension of ∇ to the whole algebra);
    Hermitian inputs give anti-Hermitian blocks.

    Raises:
        ShapeError: If a is not n×n.
        ModeError: If a is not diagonal in Diagonal mode.
    """
    return OneForm(blocks=nabla_blocks(t.L, _element(t, a)))


def lipschitz_seminorm(t: SpectralTripleSpec, a: HermitianMatrix | ComplexArray) -> float:
    """L(a) = ‖[D, a]‖ = maxᵢ ‖[Lᵢ, a]‖_op for the block-diagonal Dirac operator."""
    return float(np.max(block_operator_norms(nabla_blocks(t.L, _element(t, a)))))


def algebra_projection(t: SpectralTripleSpec, m: ComplexArray) -> ComplexArray:
    """Orthogonal projection onto the represented algebra.

    Identity in Full mode; diagonal extraction in Diagonal mode.
    """
    matrix = as_complex_array(m, ndim=2)
    if t.algebra is AlgebraMode.DIAGONAL:
        return np.diag(np.diag(matrix))
    return matrix.copy()


def divergence(t: SpectralTripleSpec, u: OneForm | ComplexArray) -> ComplexArray:
    """K(u) = Σᵢ [Lᵢ, uᵢ], followed by algebra_projection.

    Raises:
        ShapeError: If the one-form does not match the triple.
    """
    blocks = _one_form_blocks(t, u)
    return algebra_projection(t, np.sum(t.L @ blocks - blocks @ t.L, axis=0))


def traceless_part(a: ComplexArray) -> ComplexArray:
    """a − (Tr a / n)·1. Leaves L(a) and every pairing with ρ₁ − ρ₂ unchanged."""
    n = a.shape[0]
    return a - (np.trace(a) / n) * np.eye(n, dtype=np.complex128)


def nabla_matrix(t: SpectralTripleSpec) -> RealArray:
    """Real matrix of ∇ from Hermitian algebra coordinates to one-form coordinates.

    Column j holds the interleaved (Re, Im) coordinates of ∇B_j, so the shape
    is (2n²N, m).
    """
    basis = hermitian_basis(t.n, t.algebra)
    columns = [
        np.ascontiguousarray(nabla_blocks(t.L, b)).view(np.float64).ravel() for b in basis
    ]
    return np.stack(columns, axis=1)


def kernel_threshold(t: SpectralTripleSpec) -> float:
    """Nullspace cutoff 1e-9 · maxᵢ ‖Lᵢ‖_op (absolute 1e-9 when every Lᵢ vanishes)."""
    scale = float(np.max(block_operator_norms(t.L)))
    return KERNEL_RTOL * (scale if scale > 0 else 1.0)


def kernel_basis(t: SpectralTripleSpec) -> KernelBasis:
    """Orthonormal basis of {a Hermitian in the algebra : [Lᵢ, a] = 0 for all i}.

    Computed as the numerical nullspace of the stacked real-linear map
    a ↦ ([Lᵢ, a])ᵢ restricted to the Hermitian part of the algebra.
    """
    basis = hermitian_basis(t.n, t.algebra)
    matrix = nabla_matrix(t)
    threshold = kernel_threshold(t)

    _, s, vh = sla.svd(matrix, full_matrices=True)
    singular = np.zeros(basis.shape[0])
    singular[: s.size] = s
    null_rows = vh[singular <= threshold]
    elements = np.einsum("rk,kij->rij", null_rows, basis)

    logger.debug(
        "triple.kernel.computed",
        n=t.n,
        N=t.N,
        algebra=t.algebra.value,
        kernel_dimension=int(null_rows.shape[0]),
    )
    return KernelBasis(
        elements=elements,
        singular_values=[float(x) for x in singular],
        threshold=threshold,
    )


def is_connected(t: SpectralTripleSpec) -> bool:
    """True iff ker∇ consists of the scalars only."""
    return kernel_basis(t).dimension == 1


def validate_state(t: SpectralTripleSpec, rho: DensityMatrix) -> None:
    """Check that a state belongs to the triple's algebra.

    Raises:
        ShapeError: If the dimension does not match.
        ModeError: If the state has off-diagonal entries in Diagonal mode.
    """
    _element(t, rho.entries)


def finite_distance_report(
    t: SpectralTripleSpec,
    rho1: DensityMatrix,
    rho2: DensityMatrix,
    kernel: KernelBasis | None = None,
) -> FiniteDistanceReport:
    """Test whether ρ₁ − ρ₂ vanishes on ker∇.

    Args:
        t: The spectral triple.
        rho1: First state.
        rho2: Second state.
        kernel: Precomputed kernel basis, computed here when omitted.

    Returns:
        Report with the verdict and, when the distance is infinite, the
        projection of ρ₁ − ρ₂ onto the kernel as witness.
    """
    validate_state(t, rho1)
    validate_state(t, rho2)
    if kernel is None:
        kernel = kernel_basis(t)
    delta = rho1.entries - rho2.entries

    pairings = np.einsum("kij,ji->k", kernel.elements, delta).real
    max_violation = float(np.max(np.abs(pairings))) if pairings.size else 0.0
    finite = max_violation <= FINITE_DISTANCE_TOL

    witness = None
    witness_pairing = None
    if not finite:
        witness = np.einsum("k,kij->ij", pairings, kernel.elements)
        witness_pairing = float(np.sum(pairings**2))

    return FiniteDistanceReport(
        finite=finite,
        kernel_dimension=kernel.dimension,
        connected=kernel.dimension == 1,
        max_violation=max_violation,
        witness=witness,
        witness_pairing=witness_pairing,
    )


def check_finite_distance(t: SpectralTripleSpec, rho1: DensityMatrix, rho2: DensityMatrix) -> bool:
    """True iff |Tr((ρ₁ − ρ₂) k)| ≤ 1e-9 for every kernel basis element k."""
    return finite_distance_report(t, rho1, rho2).finite
