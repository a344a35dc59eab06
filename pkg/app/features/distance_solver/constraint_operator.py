"""Materialized constraint operator K(u) = Herm(algebra_projection(Σᵢ [Lᵢ, uᵢ])).

K maps one-forms to the Hermitian part of the represented algebra. Both
sides are written in Frobenius-orthonormal real coordinates, so the adjoint
K* is the transpose of the stored matrix and coincides with ∇.
"""

from functools import lru_cache

import numpy as np
import scipy.linalg as sla
from pydantic import BaseModel, ConfigDict

from app.core.exceptions import SolverError
from app.core.logging import get_logger
from app.shared.operators.operator_models import (
    ComplexArray,
    OptionalRealArrayField,
    RealArray,
    RealArrayField,
)
from app.shared.triple.triple_geometry import hermitian_basis, kernel_threshold
from app.shared.triple.triple_models import AlgebraMode, BlockStack, SpectralTripleSpec

logger = get_logger(__name__)

POWER_ITERATION_MAX = 1000
POWER_ITERATION_RTOL = 1e-12


class ConstraintOperator(BaseModel):
    """Real matrix of K with its pseudoinverse and a norm estimate.

    Domain coordinates are the interleaved (Re, Im) parts of all block
    entries (2n²N of them), or, with the anti-Hermitian restriction, the
    coefficients against i·Bⱼ in every block (n²N of them), where Bⱼ is the
    Hermitian basis of Mₙ(ℂ).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    triple: SpectralTripleSpec
    restrict_antihermitian: bool
    range_basis: BlockStack
    domain_embedding: OptionalRealArrayField
    matrix: RealArrayField
    pseudoinverse: RealArrayField
    singular_values: RealArrayField
    rank: int
    norm_estimate: float

    @property
    def domain_dim(self) -> int:
        """Number of real domain coordinates."""
        return int(self.matrix.shape[1])

    @property
    def range_dim(self) -> int:
        """Number of real range coordinates."""
        return int(self.matrix.shape[0])

    def encode(self, blocks: ComplexArray) -> RealArray:
        """Domain coordinates of a (N, n, n) block stack (orthogonal projection when restricted)."""
        full = np.ascontiguousarray(blocks, dtype=np.complex128).view(np.float64).ravel()
        if self.domain_embedding is None:
            return full.copy()
        return self.domain_embedding.T @ full

    def decode(self, coords: RealArray) -> ComplexArray:
        """Block stack with the given domain coordinates."""
        full = coords if self.domain_embedding is None else self.domain_embedding @ coords
        t = self.triple
        return np.ascontiguousarray(full, dtype=np.float64).view(np.complex128).reshape(t.N, t.n, t.n)

    def apply(self, coords: RealArray) -> RealArray:
        """K in coordinates."""
        return self.matrix @ coords

    def adjoint(self, coords: RealArray) -> RealArray:
        """K* in coordinates."""
        return self.matrix.T @ coords

    def pseudo_solve(self, coords: RealArray) -> RealArray:
        """Minimum-norm least-squares solution K†b."""
        return self.pseudoinverse @ coords


def _full_domain_basis(n: int, N: int) -> ComplexArray:
    d = 2 * n * n * N
    return np.eye(d).view(np.complex128).reshape(d, N, n, n)


def _antihermitian_domain(n: int, N: int) -> tuple[ComplexArray, RealArray]:
    herm = hermitian_basis(n, AlgebraMode.FULL)
    m = herm.shape[0]
    elements = np.zeros((N * m, N, n, n), dtype=np.complex128)
    for i in range(N):
        elements[i * m : (i + 1) * m, i] = 1j * herm
    embedding = np.stack(
        [np.ascontiguousarray(e).view(np.float64).ravel() for e in elements], axis=1
    )
    return elements, embedding


def _divergence_columns(t: SpectralTripleSpec, elements: ComplexArray, basis: ComplexArray) -> RealArray:
    raw = np.einsum("iab,pibc->pac", t.L, elements) - np.einsum("piab,ibc->pac", elements, t.L)
    # Coordinates against Hermitian algebra elements take the Hermitian part and,
    # in Diagonal mode, the diagonal: both projections are absorbed here.
    return np.einsum("kij,pij->kp", basis.conj(), raw).real


def estimate_operator_norm(matrix: RealArray, seed: int) -> float:
    """Power iteration on K Kᵀ from a seeded Gaussian start vector.

    Returns:
        Estimate of the largest singular value of ``matrix``.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(matrix.shape[0])
    x /= np.linalg.norm(x)
    estimate = 0.0
    for _ in range(POWER_ITERATION_MAX):
        y = matrix @ (matrix.T @ x)
        value = float(np.linalg.norm(y))
        if value == 0.0:
            return 0.0
        x = y / value
        if abs(value - estimate) <= POWER_ITERATION_RTOL * value:
            estimate = value
            break
        estimate = value
    return float(np.sqrt(estimate))


def build_constraint_operator(
    t: SpectralTripleSpec, restrict_antihermitian: bool = False, seed: int = 0
) -> ConstraintOperator:
    """Materialize K, its pseudoinverse and an estimate of ‖K‖.

    The pseudoinverse keeps singular values above 1e-9 · maxᵢ ‖Lᵢ‖_op, the
    same cutoff as the kernel computation, so that Δρ orthogonal to the
    numerical kernel lies in the numerical range.

    Raises:
        SolverError: If the factorization of K fails.
    """
    basis = hermitian_basis(t.n, t.algebra)
    if restrict_antihermitian:
        elements, embedding = _antihermitian_domain(t.n, t.N)
    else:
        elements, embedding = _full_domain_basis(t.n, t.N), None
    matrix = _divergence_columns(t, elements, basis)

    try:
        u, s, vh = sla.svd(matrix, full_matrices=False)
    except (sla.LinAlgError, ValueError) as e:
        raise SolverError(f"factorization of the constraint operator failed: {e}") from e

    rank = int(np.sum(s > kernel_threshold(t)))
    pseudoinverse = (vh[:rank].T / s[:rank]) @ u[:, :rank].T
    norm_estimate = estimate_operator_norm(matrix, seed)

    logger.debug(
        "solver.constraint.built",
        n=t.n,
        N=t.N,
        algebra=t.algebra.value,
        restrict_antihermitian=restrict_antihermitian,
        rank=rank,
        norm_estimate=norm_estimate,
    )
    return ConstraintOperator(
        triple=t,
        restrict_antihermitian=restrict_antihermitian,
        range_basis=basis,
        domain_embedding=embedding,
        matrix=matrix,
        pseudoinverse=pseudoinverse,
        singular_values=s,
        rank=rank,
        norm_estimate=norm_estimate,
    )


@lru_cache(maxsize=32)
def _cached_operator(
    data: bytes, shape: tuple[int, ...], algebra: str, restrict_antihermitian: bool, seed: int
) -> ConstraintOperator:
    blocks = np.frombuffer(data, dtype=np.complex128).reshape(shape)
    triple = SpectralTripleSpec(L=blocks, algebra=AlgebraMode(algebra))
    return build_constraint_operator(triple, restrict_antihermitian, seed)


def get_constraint_operator(
    t: SpectralTripleSpec, restrict_antihermitian: bool = False, seed: int = 0
) -> ConstraintOperator:
    """Cached ``build_constraint_operator``, keyed by the triple's content."""
    data, shape, algebra = t.fingerprint()
    return _cached_operator(data, shape, algebra, restrict_antihermitian, seed)
