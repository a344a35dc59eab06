"""Independent lower bound computed on the primal side.

Maximizes a ↦ Re Tr(Δρ a) over {maxᵢ ‖[Lᵢ, a]‖_op ≤ 1} by ADMM on the split
z = ∇a. The a-step is an exact least-squares solve through K†, the z-step
projects every block onto the operator-norm unit ball, and the scaled
multiplier w is a one-form whose multiple ρw tends to a dual optimum. The
penalty ρ is rebalanced from the primal and dual residuals during the first
iterations.

Every certification rounds a into the Lipschitz ball (lower bound) and ρw
onto {K(u) = Δρ} (upper bound); the run stops once their relative gap is
below tol_gap, so only the lower bound is returned but it is certified to
the same tolerance as ``solve_distance``.
"""

import math
import time

import numpy as np

from app.core.exceptions import ArgumentError
from app.core.logging import get_logger
from app.features.distance_solver.constraint_operator import get_constraint_operator
from app.features.distance_solver.distance_solver_models import SolverConfig
from app.features.distance_solver.distance_solver_service import (
    ZERO_DISTANCE_TOL,
    round_dual,
    round_primal,
)
from app.shared.operators.operator_core import clip_to_operator_ball
from app.shared.operators.operator_models import ComplexArray, HermitianMatrix
from app.shared.triple.triple_geometry import finite_distance_report, from_coords, to_coords
from app.shared.triple.triple_models import DensityMatrix, SpectralTripleSpec

logger = get_logger(__name__)

PENALTY_ADAPT_ITERS = 200
RESIDUAL_GAP = 10.0
PENALTY_FACTOR = 2.0


def _clip_blocks(blocks: ComplexArray) -> ComplexArray:
    return np.stack([clip_to_operator_ball(block, 1.0) for block in blocks])


def solve_primal_ascent(
    t: SpectralTripleSpec,
    rho1: DensityMatrix,
    rho2: DensityMatrix,
    cfg: SolverConfig | None = None,
) -> tuple[float, HermitianMatrix]:
    """Certified lower bound on d_D(ρ₁, ρ₂) from the primal side.

    The initial penalty is step_ratio · ‖K†Δρ‖, the size of the minimum-norm
    one-form reaching Δρ. Certification runs every check_every iterations
    and at max_iter.

    Returns:
        ``(value, a)`` with L(a) ≤ 1 and Re Tr((ρ₁ − ρ₂) a) = value.

    Raises:
        ArgumentError: If the states are at infinite distance.
    """
    cfg = cfg or SolverConfig()
    report = finite_distance_report(t, rho1, rho2)
    if not report.finite:
        raise ArgumentError("states are at infinite distance; primal ascent needs a finite distance")

    delta = rho1.entries - rho2.entries
    if float(np.linalg.norm(delta)) <= ZERO_DISTANCE_TOL:
        return 0.0, HermitianMatrix(entries=np.zeros((t.n, t.n), dtype=np.complex128))

    start = time.perf_counter()
    op = get_constraint_operator(t, seed=cfg.seed)
    basis = op.range_basis
    target = to_coords(delta, basis)
    # a-step offset K†ᵀK†Δρ, scaled by 1/ρ each iteration
    base = op.pseudo_solve(target)
    penalty = cfg.step_ratio * float(np.linalg.norm(base))

    z = np.zeros(op.domain_dim)
    w = np.zeros(op.domain_dim)
    a = np.zeros_like(target)
    best_lower = -math.inf
    best_a = HermitianMatrix(entries=np.zeros((t.n, t.n), dtype=np.complex128))
    best_upper = math.inf
    iteration = 0

    for iteration in range(1, cfg.max_iter + 1):
        a = op.pseudoinverse.T @ (base / penalty + z - w)
        grad_a = op.adjoint(a)
        z_next = op.encode(_clip_blocks(op.decode(grad_a + w)))
        primal_residual = float(np.linalg.norm(grad_a - z_next))
        dual_residual = penalty * float(np.linalg.norm(op.apply(z_next - z)))
        w = w + grad_a - z_next
        z = z_next

        if iteration <= PENALTY_ADAPT_ITERS:
            # w is scaled by 1/ρ, so it is rescaled to keep ρw fixed
            if primal_residual > RESIDUAL_GAP * dual_residual:
                penalty *= PENALTY_FACTOR
                w = w / PENALTY_FACTOR
            elif dual_residual > RESIDUAL_GAP * primal_residual:
                penalty /= PENALTY_FACTOR
                w = w * PENALTY_FACTOR

        if iteration % cfg.check_every == 0 or iteration == cfg.max_iter:
            lower, feasible = round_primal(t, from_coords(a, basis), delta)
            upper, _ = round_dual(op, op.decode(penalty * w), delta)
            if lower > best_lower:
                best_lower, best_a = lower, feasible
            best_upper = min(best_upper, upper)
            logger.debug(
                "solver.primal_ascent.certification_completed",
                iteration=iteration,
                lower=best_lower,
                upper=best_upper,
                penalty=penalty,
            )
            if (best_upper - best_lower) / max(1.0, best_upper) <= cfg.tol_gap:
                break

    logger.info(
        "solver.primal_ascent.solve_completed",
        iterations=iteration,
        value=best_lower,
        upper=best_upper,
        duration_ms=round((time.perf_counter() - start) * 1000, 2),
    )
    return best_lower, best_a
