"""Self-contained problem fixtures for ``gen``."""

import numpy as np

from app.cli.converters import problem_to_doc
from app.cli.models import GenParams, ProblemFile
from app.core.exceptions import ArgumentError
from app.features.transport_line.transport_line_models import DiscreteMeasure1D
from app.features.transport_line.transport_line_service import line_bridge
from app.shared.triple.triple_factory import random_density_matrix, random_triple, two_point_triple
from app.shared.triple.triple_models import AlgebraMode, DensityMatrix


def generate_two_point(lam: float) -> ProblemFile:
    """L = Λσx with the two basis states, at distance 1/Λ."""
    t = two_point_triple(lam)
    return problem_to_doc(t, DensityMatrix.diagonal([1.0, 0.0]), DensityMatrix.diagonal([0.0, 1.0]))


def generate_line(positions: list[float], weights1: list[float], weights2: list[float]) -> ProblemFile:
    """Line-graph triple with two classical states on the given points.

    Raises:
        ArgumentError: If the weight vectors do not match the positions.
    """
    if not (len(positions) == len(weights1) == len(weights2)):
        raise ArgumentError(
            f"{len(positions)} positions need as many weights, "
            f"got {len(weights1)} and {len(weights2)}"
        )
    mu = DiscreteMeasure1D(atoms=positions, weights=weights1)
    nu = DiscreteMeasure1D(atoms=positions, weights=weights2)
    t, rho_mu, rho_nu = line_bridge(mu, nu)
    return problem_to_doc(t, rho_mu, rho_nu)


def generate_random(n: int, N: int, seed: int, algebra: AlgebraMode = AlgebraMode.FULL) -> ProblemFile:
    """Random triple and two full-rank states, deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    t = random_triple(rng, n, N, algebra)
    diagonal = algebra is AlgebraMode.DIAGONAL
    rho1 = random_density_matrix(rng, n, diagonal=diagonal)
    rho2 = random_density_matrix(rng, n, diagonal=diagonal)
    return problem_to_doc(t, rho1, rho2)


def generate(params: GenParams) -> ProblemFile:
    """Dispatch on ``params.kind``."""
    if params.kind == "two-point":
        return generate_two_point(params.lam)
    if params.kind == "line":
        return generate_line(params.positions, params.weights1, params.weights2)
    return generate_random(params.n, params.N, params.seed, params.algebra)
