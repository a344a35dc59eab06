"""Certified spectral distance by a primal-dual iteration with rounding.

The iteration works on min_u Σᵢ‖uᵢ‖_* + sup_a Re⟨a, Δρ − K(u)⟩. Its iterates
are never trusted: bounds come only from ``round_primal`` (a feasible a,
hence a lower bound) and ``round_dual`` (an exactly feasible u, hence an
upper bound).
"""

import math
import time

import numpy as np

from app.core.exceptions import InfeasibleConstraintError, SolverError
from app.core.logging import get_logger
from app.features.distance_solver.constraint_operator import (
    ConstraintOperator,
    get_constraint_operator,
)
from app.features.distance_solver.distance_solver_models import (
    CertificateStatus,
    CertificationStep,
    DistanceCertificate,
    SolverConfig,
)
from app.shared.operators.operator_core import block_nuclear_norms, block_soft_threshold
from app.shared.operators.operator_models import (
    ComplexArray,
    HermitianMatrix,
    RealArray,
    as_square_matrix,
    hermitian_part,
)
from app.shared.triple.triple_geometry import (
    divergence,
    finite_distance_report,
    from_coords,
    hermitian_basis,
    kernel_basis,
    lipschitz_seminorm,
    to_coords,
    traceless_part,
    validate_state,
)
from app.shared.triple.triple_models import DensityMatrix, OneForm, SpectralTripleSpec

logger = get_logger(__name__)

ZERO_DISTANCE_TOL = 1e-12
UNBOUNDED_SEMINORM_TOL = 1e-14
UNBOUNDED_PAIRING_TOL = 1e-12
FEASIBILITY_TOL = 1e-9
WEAK_DUALITY_RTOL = 1e-9
STEP_SAFETY = 0.95


def _matrix(value: HermitianMatrix | ComplexArray) -> ComplexArray:
    return value.entries if isinstance(value, HermitianMatrix) else as_square_matrix(value)


def _pairing(delta: ComplexArray, a: ComplexArray) -> float:
    # Re Tr(Δρ a) = Re Tr(Δρ† a) for Hermitian Δρ
    return float(np.vdot(delta, a).real)


def round_primal(
    t: SpectralTripleSpec,
    a: HermitianMatrix | ComplexArray,
    delta: HermitianMatrix | ComplexArray,
) -> tuple[float, HermitianMatrix]:
    """Rescale a into the Lipschitz ball and pair it with Δρ.

    The trace of a is removed first; it lies in ker∇ and pairs to zero with
    any difference of states.

    Returns:
        ``(lower, a_feasible)``. ``lower`` is +inf when a is (numerically)
        central but pairs positively with Δρ, which can only happen when the
        finiteness gate was bypassed.
    """
    matrix = _matrix(a)
    delta_m = _matrix(delta)
    s = lipschitz_seminorm(t, matrix)
    pairing = _pairing(delta_m, matrix)
    if s <= UNBOUNDED_SEMINORM_TOL and pairing > UNBOUNDED_PAIRING_TOL:
        logger.warning("solver.primal.unbounded_direction", seminorm=s, pairing=pairing)
        return math.inf, HermitianMatrix(entries=matrix)
    feasible = HermitianMatrix(entries=traceless_part(matrix) / max(s, 1.0))
    return _pairing(delta_m, feasible.entries), feasible


def _project_dual(op: ConstraintOperator, coords: RealArray, target: RealArray) -> tuple[RealArray, float]:
    projected = coords + op.pseudo_solve(target - op.apply(coords))
    residual = float(np.linalg.norm(op.apply(projected) - target))
    return projected, residual


def round_dual(
    op: ConstraintOperator,
    u: OneForm | ComplexArray,
    delta: HermitianMatrix | ComplexArray,
) -> tuple[float, OneForm]:
    """Project u onto {K(u) = Δρ} and return its nuclear-norm sum.

    Under the anti-Hermitian restriction the Hermitian part of each block is
    discarded first.

    Raises:
        InfeasibleConstraintError: If Δρ is not in the numerical range of K.
    """
    blocks = u.blocks if isinstance(u, OneForm) else np.asarray(u, dtype=np.complex128)
    target = to_coords(_matrix(delta), op.range_basis)
    projected, residual = _project_dual(op, op.encode(blocks), target)
    if residual > FEASIBILITY_TOL:
        raise InfeasibleConstraintError(
            f"affine projection left residual {residual:.3e}; ρ₁ − ρ₂ is not in the range of K",
            residual=residual,
        )
    feasible = op.decode(projected)
    return float(np.sum(block_nuclear_norms(feasible))), OneForm(blocks=feasible)


def _infinite_certificate(kernel_dimension: int) -> DistanceCertificate:
    return DistanceCertificate(
        lower=math.inf,
        upper=math.inf,
        gap=0.0,
        status=CertificateStatus.INFINITE,
        kernel_dimension=kernel_dimension,
        connected=kernel_dimension == 1,
    )


def _zero_certificate(t: SpectralTripleSpec, kernel_dimension: int) -> DistanceCertificate:
    return DistanceCertificate(
        lower=0.0,
        upper=0.0,
        gap=0.0,
        status=CertificateStatus.ZERO_DISTANCE,
        primal_witness=HermitianMatrix(entries=np.zeros((t.n, t.n), dtype=np.complex128)),
        dual_witness=OneForm.zeros(t.n, t.N),
        kernel_dimension=kernel_dimension,
        connected=kernel_dimension == 1,
        constraint_residual=0.0,
        witness_seminorm=0.0,
    )


def solve_distance(
    t: SpectralTripleSpec,
    rho1: DensityMatrix,
    rho2: DensityMatrix,
    cfg: SolverConfig | None = None,
) -> DistanceCertificate:
    """Certified bracket around the spectral distance d_D(ρ₁, ρ₂).

    Args:
        t: The spectral triple.
        rho1: First state.
        rho2: Second state.
        cfg: Solver parameters, defaults when omitted.

    Returns:
        A certificate whose status is Infinite when ρ₁ − ρ₂ pairs with ker∇,
        ZeroDistance when the states coincide, and otherwise Converged or
        MaxIter with rounded witnesses for both bounds.

    Raises:
        ShapeError: If the states do not match the triple.
        ModeError: If a state is off-diagonal in Diagonal mode.
        SolverError: If the constraint operator cannot be factored.
    """
    cfg = cfg or SolverConfig()
    validate_state(t, rho1)
    validate_state(t, rho2)
    start = time.perf_counter()

    kernel = kernel_basis(t)
    report = finite_distance_report(t, rho1, rho2, kernel)
    if not report.finite:
        logger.info(
            "solver.distance.gate_rejected",
            kernel_dimension=report.kernel_dimension,
            max_violation=report.max_violation,
        )
        return _infinite_certificate(report.kernel_dimension)

    delta = rho1.entries - rho2.entries
    if float(np.linalg.norm(delta)) <= ZERO_DISTANCE_TOL:
        logger.info("solver.distance.zero_detected")
        return _zero_certificate(t, report.kernel_dimension)

    op = get_constraint_operator(t, cfg.restrict_antihermitian, cfg.seed)
    basis = hermitian_basis(t.n, t.algebra)
    target = to_coords(delta, basis)

    norm = op.norm_estimate
    if norm > 0:
        tau = cfg.step_ratio * math.sqrt(STEP_SAFETY) / norm
        sigma = math.sqrt(STEP_SAFETY) / (cfg.step_ratio * norm)
    else:
        tau = sigma = 1.0

    a = target / max(1.0, lipschitz_seminorm(t, delta))
    u = np.zeros(op.domain_dim)

    logger.info(
        "solver.distance.solve_started",
        n=t.n,
        N=t.N,
        algebra=t.algebra.value,
        restrict_antihermitian=cfg.restrict_antihermitian,
        norm_estimate=norm,
        tau=tau,
        sigma=sigma,
    )

    best_lower, best_a = -math.inf, a
    best_upper, best_u = math.inf, u
    history: list[CertificationStep] = []
    status = CertificateStatus.MAX_ITER
    iteration = 0

    while True:
        if iteration % cfg.check_every == 0 or iteration == cfg.max_iter:
            lower, _ = round_primal(t, from_coords(a, basis), delta)
            if math.isinf(lower):
                raise SolverError("primal iterate is central yet separates the states")
            projected, residual = _project_dual(op, u, target)
            if residual > FEASIBILITY_TOL:
                raise InfeasibleConstraintError(
                    f"affine projection left residual {residual:.3e} after the finiteness gate passed",
                    residual=residual,
                )
            upper = float(np.sum(block_nuclear_norms(op.decode(projected))))
            history.append(CertificationStep(iteration=iteration, lower=lower, upper=upper))
            if lower > upper + WEAK_DUALITY_RTOL * max(1.0, upper):
                logger.warning("solver.distance.weak_duality_violated", lower=lower, upper=upper)
            if lower > best_lower:
                best_lower, best_a = lower, a.copy()
            if upper < best_upper:
                best_upper, best_u = upper, u.copy()

            logger.debug(
                "solver.distance.certification_completed",
                iteration=iteration,
                lower=best_lower,
                upper=best_upper,
            )
            if (best_upper - best_lower) / max(1.0, best_upper) <= cfg.tol_gap:
                status = CertificateStatus.CONVERGED
                break

        if iteration >= cfg.max_iter:
            break

        v = op.decode(u + tau * op.adjoint(a))
        u_next = op.encode(block_soft_threshold(v, tau))
        a = a + sigma * (target - op.apply(2.0 * u_next - u))
        u = u_next
        iteration += 1

    lower, primal_witness = round_primal(t, from_coords(best_a, basis), delta)
    upper, dual_witness = round_dual(op, op.decode(best_u), delta)
    constraint_residual = float(np.linalg.norm(hermitian_part(divergence(t, dual_witness)) - delta))
    witness_seminorm = lipschitz_seminorm(t, primal_witness)

    logger.info(
        "solver.distance.solve_completed",
        status=status.value,
        iterations=iteration,
        lower=lower,
        upper=upper,
        gap=upper - lower,
        duration_ms=round((time.perf_counter() - start) * 1000, 2),
    )
    return DistanceCertificate(
        lower=lower,
        upper=upper,
        gap=upper - lower,
        status=status,
        iterations=iteration,
        primal_witness=primal_witness,
        dual_witness=dual_witness,
        kernel_dimension=report.kernel_dimension,
        connected=report.connected,
        history=history,
        operator_norm_estimate=norm,
        constraint_residual=constraint_residual,
        witness_seminorm=witness_seminorm,
    )
