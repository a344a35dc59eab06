"""Tests for the derivation, its adjoint and the kernel analysis."""

import numpy as np
import pytest

from app.core.exceptions import ModeError, ShapeError
from app.shared.operators.operator_core import frobenius_inner
from app.shared.operators.operator_models import HermitianMatrix
from app.shared.triple.triple_factory import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    random_hermitian,
    random_triple,
    random_unitary,
    two_point_triple,
)
from app.shared.triple.triple_geometry import (
    algebra_projection,
    check_finite_distance,
    divergence,
    finite_distance_report,
    hermitian_basis,
    is_connected,
    kernel_basis,
    lipschitz_seminorm,
    nabla,
    nabla_blocks,
    traceless_part,
)
from app.shared.triple.triple_models import AlgebraMode, DensityMatrix, SpectralTripleSpec


def _random_one_form(rng: np.random.Generator, n: int, N: int) -> np.ndarray:
    return rng.standard_normal((N, n, n)) + 1j * rng.standard_normal((N, n, n))


# hermitian_basis


@pytest.mark.parametrize(("algebra", "size"), [(AlgebraMode.FULL, 9), (AlgebraMode.DIAGONAL, 3)])
def test_hermitian_basis_is_orthonormal(algebra: AlgebraMode, size: int) -> None:
    """Test the basis has the right size and is Frobenius-orthonormal and Hermitian."""
    basis = hermitian_basis(3, algebra)

    gram = np.einsum("kij,lij->kl", basis.conj(), basis).real
    assert basis.shape == (size, 3, 3)
    assert np.allclose(gram, np.eye(size))
    assert np.allclose(basis, np.conj(np.swapaxes(basis, 1, 2)))


# nabla and the seminorm


def test_nabla_two_point() -> None:
    """Test ∇diag(a₁, a₂) = (a₂ − a₁)Λ(E₁₂ − E₂₁)."""
    lam = 1.5
    t = two_point_triple(lam)

    u = nabla(t, np.diag([0.3, -0.9]))

    expected = (-0.9 - 0.3) * lam * np.array([[0, 1], [-1, 0]])
    assert np.allclose(u.blocks[0], expected)


def test_nabla_of_hermitian_is_antihermitian(rng: np.random.Generator) -> None:
    """Test Hermitian inputs give anti-Hermitian blocks."""
    t = random_triple(rng, 3, 2)

    assert nabla(t, HermitianMatrix(entries=random_hermitian(rng, 3))).is_antihermitian()


def test_lipschitz_seminorm_two_point() -> None:
    """Test L(diag(a₁, a₂)) = Λ|a₁ − a₂|."""
    t = two_point_triple(2.0)

    assert lipschitz_seminorm(t, np.diag([1.0, -0.5])) == pytest.approx(3.0)


def test_lipschitz_seminorm_vanishes_on_identity(rng: np.random.Generator) -> None:
    """Test L(1) = 0 and invariance under adding scalars."""
    t = random_triple(rng, 3, 2)
    a = random_hermitian(rng, 3)

    assert lipschitz_seminorm(t, np.eye(3)) == pytest.approx(0.0, abs=1e-14)
    assert lipschitz_seminorm(t, a + 4 * np.eye(3)) == pytest.approx(lipschitz_seminorm(t, a))
    assert lipschitz_seminorm(t, traceless_part(a)) == pytest.approx(lipschitz_seminorm(t, a))


def test_nabla_derivation_rule(rng: np.random.Generator) -> None:
    """Test ∇(ab) = ∇(a)b + a∇(b)."""
    t = random_triple(rng, 3, 2)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))

    lhs = nabla_blocks(t.L, a @ b)
    rhs = nabla_blocks(t.L, a) @ b + a @ nabla_blocks(t.L, b)
    assert np.allclose(lhs, rhs)


def test_nabla_shape_mismatch(two_point: SpectralTripleSpec) -> None:
    """Test elements of the wrong size are refused."""
    with pytest.raises(ShapeError):
        nabla(two_point, np.eye(3))


def test_nabla_diagonal_mode_rejects_off_diagonal() -> None:
    """Test Diagonal mode refuses elements outside the diagonal algebra."""
    t = two_point_triple(1.0, AlgebraMode.DIAGONAL)

    with pytest.raises(ModeError):
        nabla(t, SIGMA_X)


# divergence


def test_divergence_two_point() -> None:
    """Test u = (−i/(2Λ))σy has divergence σz."""
    lam = 2.0
    t = two_point_triple(lam)

    k = divergence(t, (-1j / (2 * lam)) * SIGMA_Y[None])

    assert np.allclose(k, SIGMA_Z)


@pytest.mark.parametrize("algebra", list(AlgebraMode))
def test_divergence_is_adjoint_of_nabla(rng: np.random.Generator, algebra: AlgebraMode) -> None:
    """Test ⟨u, ∇a⟩ = ⟨K(u), a⟩ for the real inner product Re Tr(x†y)."""
    t = random_triple(rng, 4, 2, algebra)
    u = _random_one_form(rng, 4, 2)
    a = random_hermitian(rng, 4)
    if algebra is AlgebraMode.DIAGONAL:
        a = np.diag(np.diag(a).real)

    lhs = sum(frobenius_inner(u[i], nabla(t, a).blocks[i]) for i in range(t.N))
    rhs = frobenius_inner(divergence(t, u), a)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


def test_bilinear_pairing_has_minus_sign(rng: np.random.Generator) -> None:
    """Test Tr(uᵢ[Lᵢ, a]) = −Tr([Lᵢ, uᵢ]a) without conjugation."""
    t = random_triple(rng, 3, 1)
    u = _random_one_form(rng, 3, 1)
    a = random_hermitian(rng, 3)

    lhs = np.trace(u[0] @ nabla_blocks(t.L, a)[0])
    rhs = -np.trace(divergence(t, u) @ a)
    assert lhs == pytest.approx(rhs)


def test_divergence_range_is_orthogonal_to_kernel(rng: np.random.Generator) -> None:
    """Test ⟨k, K(u)⟩ = 0 for every kernel element."""
    t = SpectralTripleSpec(L=np.stack([np.diag([1.0, 2.0, 2.0]), np.diag([0.0, 1.0, 1.0])]))
    kernel = kernel_basis(t)
    u = _random_one_form(rng, 3, 2)

    k = divergence(t, u)
    for element in kernel.elements:
        assert frobenius_inner(element, k) == pytest.approx(0.0, abs=1e-12)


def _structured_triple(rng: np.random.Generator) -> SpectralTripleSpec:
    """Generic, commuting or block-diagonal triple, so kernels of several sizes occur."""
    n = int(rng.integers(1, 7))
    N = int(rng.integers(1, 4))
    algebra = AlgebraMode.DIAGONAL if rng.random() < 0.3 else AlgebraMode.FULL
    kind = int(rng.integers(0, 3))
    if kind == 0 or n == 1:
        return random_triple(rng, n, N, algebra)
    w = random_unitary(rng, n)
    if kind == 1:
        levels = rng.integers(0, 3, size=(N, n)).astype(float)
        blocks = np.stack([(w * level) @ w.conj().T for level in levels])
    else:
        cut = int(rng.integers(1, n))
        blocks = np.zeros((N, n, n), dtype=np.complex128)
        for i in range(N):
            blocks[i, :cut, :cut] = random_hermitian(rng, cut)
            blocks[i, cut:, cut:] = random_hermitian(rng, n - cut)
        blocks = w @ blocks @ w.conj().T
    return SpectralTripleSpec(L=blocks, algebra=algebra)


@pytest.mark.parametrize("seed", range(200))
def test_adjointness_and_kernel_on_random_triples(seed: int) -> None:
    """Test the adjoint identity, kernel seminorms and range ⊥ kernel on random triples."""
    rng = np.random.default_rng(seed)
    t = _structured_triple(rng)
    u = _random_one_form(rng, t.n, t.N)
    u /= np.linalg.norm(u)
    a = random_hermitian(rng, t.n)
    if t.algebra is AlgebraMode.DIAGONAL:
        a = np.diag(np.diag(a).real)
    a /= np.linalg.norm(a)

    k = divergence(t, u)
    lhs = sum(frobenius_inner(u[i], nabla(t, a).blocks[i]) for i in range(t.N))
    assert abs(lhs - frobenius_inner(k, a)) <= 1e-10

    kernel = kernel_basis(t)
    assert kernel.dimension >= 1
    for element in kernel.elements:
        assert lipschitz_seminorm(t, element) <= 1e-8
        assert abs(frobenius_inner(element, k)) <= 1e-9


def test_divergence_shape_mismatch(two_point: SpectralTripleSpec) -> None:
    """Test one-forms must match the block stack."""
    with pytest.raises(ShapeError):
        divergence(two_point, np.zeros((2, 2, 2)))


def test_algebra_projection_modes() -> None:
    """Test identity in Full mode and diagonal extraction in Diagonal mode."""
    m = np.array([[1.0, 2.0], [3.0, 4.0]])

    assert np.allclose(algebra_projection(two_point_triple(), m), m)
    diagonal = two_point_triple(1.0, AlgebraMode.DIAGONAL)
    assert np.allclose(algebra_projection(diagonal, m), np.diag([1.0, 4.0]))


# kernel and finiteness


def test_kernel_of_pauli_x_full_mode() -> None:
    """Test the commutant of σx is spanned by 1 and σx."""
    kernel = kernel_basis(two_point_triple())

    assert kernel.dimension == 2
    assert not is_connected(two_point_triple())
    for k in kernel.elements:
        assert np.allclose(nabla_blocks(two_point_triple().L, k), 0, atol=1e-12)


def test_kernel_of_two_point_diagonal_mode() -> None:
    """Test the diagonal two-point triple is connected."""
    t = two_point_triple(1.0, AlgebraMode.DIAGONAL)

    assert kernel_basis(t).dimension == 1
    assert is_connected(t)


def test_kernel_of_generic_triple(rng: np.random.Generator) -> None:
    """Test two generic blocks leave only the scalars."""
    t = random_triple(rng, 4, 2)

    kernel = kernel_basis(t)

    assert kernel.dimension == 1
    scalar = kernel.elements[0] / kernel.elements[0][0, 0]
    assert np.allclose(scalar, np.eye(4))


def test_kernel_elements_are_orthonormal() -> None:
    """Test the kernel basis is Frobenius-orthonormal."""
    t = SpectralTripleSpec(L=np.diag([1.0, 1.0, 2.0])[None])

    kernel = kernel_basis(t)

    gram = np.einsum("kij,lij->kl", kernel.elements.conj(), kernel.elements).real
    assert kernel.dimension == 5
    assert np.allclose(gram, np.eye(5))


def test_finite_distance_fails_for_pauli_z(
    basis_states: tuple[DensityMatrix, DensityMatrix],
) -> None:
    """Test L = σz cannot separate its eigenstates and reports a witness."""
    t = SpectralTripleSpec(L=SIGMA_Z[None])

    report = finite_distance_report(t, *basis_states)

    assert not report.finite
    assert report.kernel_dimension == 2
    assert report.witness is not None
    assert report.witness_pairing == pytest.approx(2.0)
    assert np.allclose(report.witness, SIGMA_Z)
    assert not check_finite_distance(t, *basis_states)


def test_finite_distance_holds_for_pauli_x(
    two_point: SpectralTripleSpec, basis_states: tuple[DensityMatrix, DensityMatrix]
) -> None:
    """Test L = Λσx gives a finite distance even though it is not connected."""
    report = finite_distance_report(two_point, *basis_states)

    assert report.finite
    assert not report.connected
    assert report.witness is None
    assert check_finite_distance(two_point, *basis_states)


def test_finite_distance_state_dimension_mismatch(two_point: SpectralTripleSpec) -> None:
    """Test states of the wrong size are refused."""
    rho = DensityMatrix.diagonal([1.0, 0.0, 0.0])

    with pytest.raises(ShapeError):
        check_finite_distance(two_point, rho, rho)
