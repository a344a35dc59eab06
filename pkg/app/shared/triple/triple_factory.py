"""Deterministic constructors for example triples and states."""

import numpy as np

from app.core.exceptions import ArgumentError
from app.shared.operators.operator_models import ComplexArray
from app.shared.triple.triple_models import AlgebraMode, DensityMatrix, SpectralTripleSpec

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def two_point_triple(lam: float = 1.0, algebra: AlgebraMode = AlgebraMode.FULL) -> SpectralTripleSpec:
    """n = 2, N = 1, L = Λσx. The basis states are at distance 1/Λ."""
    if lam <= 0:
        raise ArgumentError(f"Λ must be positive, got {lam}")
    return SpectralTripleSpec(L=(lam * SIGMA_X)[None, :, :], algebra=algebra)


def random_hermitian(rng: np.random.Generator, n: int, scale: float = 1.0) -> ComplexArray:
    """Hermitian matrix from the Gaussian unitary ensemble, scaled."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (g + g.conj().T) / 2


def random_unitary(rng: np.random.Generator, n: int) -> ComplexArray:
    """Haar-distributed unitary via QR with phase correction."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_triple(
    rng: np.random.Generator,
    n: int,
    N: int,
    algebra: AlgebraMode = AlgebraMode.FULL,
    scale: float = 1.0,
) -> SpectralTripleSpec:
    """Triple with N independent random Hermitian blocks.

    In Diagonal mode the blocks are still dense: the algebra is diagonal, not the Lᵢ.
    """
    if n < 1 or N < 1:
        raise ArgumentError(f"need n ≥ 1 and N ≥ 1, got n={n}, N={N}")
    blocks = np.stack([random_hermitian(rng, n, scale) for _ in range(N)])
    return SpectralTripleSpec(L=blocks, algebra=algebra)


def random_density_matrix(
    rng: np.random.Generator,
    n: int,
    rank: int | None = None,
    *,
    diagonal: bool = False,
) -> DensityMatrix:
    """Random state of rank ``rank`` (full rank by default).

    Args:
        rng: Random generator.
        n: Dimension.
        rank: Number of nonzero eigenvalues, 1 ≤ rank ≤ n.
        diagonal: Produce a diagonal (classical) state instead.
    """
    rank = n if rank is None else rank
    if not 1 <= rank <= n:
        raise ArgumentError(f"rank must be in [1, {n}], got {rank}")
    if diagonal:
        weights = np.zeros(n)
        support = rng.choice(n, size=rank, replace=False)
        weights[support] = rng.random(rank) + 0.05
        return DensityMatrix.diagonal(weights / weights.sum())
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(entries=rho / np.trace(rho).real)
