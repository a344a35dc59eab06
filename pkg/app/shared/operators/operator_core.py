"""Dense complex-matrix kernel.

Decompositions, norms, commutators and the proximal/projection operators used
by the distance solver. Every function is pure: inputs are never modified and
no state is kept between calls.

Single-matrix operations use scipy.linalg and verify their reconstruction.
The ``block_*`` helpers work on stacks of shape (N, n, n) with batched
numpy.linalg calls and are meant for solver inner loops.
"""

import numpy as np
import scipy.linalg as sla

from app.core.exceptions import ArgumentError, NumericError, ShapeError
from app.shared.operators.operator_models import (
    ComplexArray,
    HermitianMatrix,
    RealArray,
    as_complex_array,
    as_square_matrix,
)

RECONSTRUCTION_RTOL = 1e-10
# Floor for the zero matrix and other inputs whose norm underflows the relative bound
RECONSTRUCTION_ATOL = 1e-14


def _reconstruction_tolerance(matrix: ComplexArray) -> float:
    scale = RECONSTRUCTION_RTOL * max(*matrix.shape, 1) * float(np.linalg.norm(matrix))
    return max(scale, RECONSTRUCTION_ATOL)


def frobenius_inner(x: ComplexArray, y: ComplexArray) -> float:
    """Real inner product Re Tr(x†y)."""
    return float(np.vdot(x, y).real)


def commutator(a: ComplexArray, b: ComplexArray) -> ComplexArray:
    """Return ab − ba.

    Raises:
        ShapeError: If a and b are not square matrices of equal dimension.
    """
    a = as_square_matrix(a, name="a")
    b = as_square_matrix(b, name="b")
    if a.shape != b.shape:
        raise ShapeError(f"commutator of {a.shape} and {b.shape} matrices")
    return a @ b - b @ a


def hermitian_eig(h: HermitianMatrix | ComplexArray) -> tuple[RealArray, ComplexArray]:
    """Eigendecomposition h = V diag(λ) V† with ascending eigenvalues.

    Args:
        h: Hermitian matrix (plain arrays are symmetrized first).

    Returns:
        Tuple of (eigenvalues ascending, unitary eigenvector matrix).

    Raises:
        NumericError: If the solver does not converge or the reconstruction
            error exceeds 1e-10·dim·‖h‖_F.
    """
    matrix = h.entries if isinstance(h, HermitianMatrix) else HermitianMatrix(entries=h).entries
    try:
        eigenvalues, vectors = sla.eigh(matrix)
    except sla.LinAlgError as e:
        raise NumericError(f"Hermitian eigensolver did not converge: {e}") from e

    residual = float(np.linalg.norm((vectors * eigenvalues) @ vectors.conj().T - matrix))
    if residual > _reconstruction_tolerance(matrix):
        raise NumericError("Hermitian eigendecomposition failed to reconstruct input", residual)
    return eigenvalues.astype(np.float64), vectors.astype(np.complex128)


def svd(m: ComplexArray) -> tuple[ComplexArray, RealArray, ComplexArray]:
    """Singular value decomposition m = U diag(s) V†.

    Tries the divide-and-conquer LAPACK driver first and falls back to the
    QR-iteration driver when it fails to converge.

    Returns:
        Tuple of (U, singular values descending, V). Note V, not V†.

    Raises:
        NumericError: If both drivers fail or the reconstruction error
            exceeds 1e-10·max(dims)·‖m‖_F.
    """
    matrix = as_complex_array(m, ndim=2)
    try:
        u, s, vh = sla.svd(matrix, full_matrices=False, lapack_driver="gesdd")
    except sla.LinAlgError:
        try:
            u, s, vh = sla.svd(matrix, full_matrices=False, lapack_driver="gesvd")
        except sla.LinAlgError as e:
            raise NumericError(f"SVD did not converge: {e}") from e

    residual = float(np.linalg.norm((u * s) @ vh - matrix))
    if residual > _reconstruction_tolerance(matrix):
        raise NumericError("SVD failed to reconstruct input", residual)
    return u.astype(np.complex128), s.astype(np.float64), vh.conj().T.astype(np.complex128)


def operator_norm(m: ComplexArray) -> float:
    """Largest singular value."""
    _, s, _ = svd(m)
    return float(s[0]) if s.size else 0.0


def nuclear_norm(m: ComplexArray) -> float:
    """Sum of singular values, Tr √(m†m)."""
    _, s, _ = svd(m)
    return float(np.sum(s))


def singular_value_soft_threshold(m: ComplexArray, tau: float) -> ComplexArray:
    """Proximal operator of τ·‖·‖_*: U diag(max(s − τ, 0)) V†.

    Raises:
        ArgumentError: If τ is negative.
    """
    if tau < 0:
        raise ArgumentError(f"threshold must be non-negative, got {tau}")
    u, s, v = svd(m)
    return (u * np.maximum(s - tau, 0.0)) @ v.conj().T


def clip_to_operator_ball(m: ComplexArray, r: float) -> ComplexArray:
    """Euclidean projection onto {x : ‖x‖_op ≤ r}: U diag(min(s, r)) V†.

    Raises:
        ArgumentError: If r is not positive.
    """
    if r <= 0:
        raise ArgumentError(f"radius must be positive, got {r}")
    matrix = as_complex_array(m, ndim=2)
    u, s, v = svd(matrix)
    if s.size == 0 or s[0] <= r:
        return matrix.copy()
    return (u * np.minimum(s, r)) @ v.conj().T


def block_singular_values(blocks: ComplexArray) -> RealArray:
    """Singular values of every block in a (N, n, n) stack, shape (N, n), descending."""
    try:
        return np.linalg.svd(blocks, compute_uv=False)
    except np.linalg.LinAlgError as e:
        raise NumericError(f"batched SVD did not converge: {e}") from e


def block_operator_norms(blocks: ComplexArray) -> RealArray:
    """Operator norm of every block."""
    return block_singular_values(blocks)[:, 0]


def block_nuclear_norms(blocks: ComplexArray) -> RealArray:
    """Nuclear norm of every block."""
    return block_singular_values(blocks).sum(axis=1)


def block_soft_threshold(blocks: ComplexArray, tau: float) -> ComplexArray:
    """Singular value soft-thresholding applied to every block with the same τ."""
    try:
        u, s, vh = np.linalg.svd(blocks, full_matrices=False)
    except np.linalg.LinAlgError as e:
        raise NumericError(f"batched SVD did not converge: {e}") from e
    return (u * np.maximum(s - tau, 0.0)[:, None, :]) @ vh
