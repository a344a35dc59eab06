"""Wasserstein-1 on the real line and the line-graph spectral triple.

On ℝ the Kantorovich distance between atomic measures is ∫|w(x)| dx, where
w is the difference of the cumulative distributions, and the primitive of
sign(w) is an optimal 1-Lipschitz potential. The line-graph triple turns the
same problem into a spectral distance between diagonal states.
"""

import numpy as np

from app.core.exceptions import ArgumentError
from app.core.logging import get_logger
from app.features.transport_line.transport_line_models import (
    DiscreteMeasure1D,
    PiecewiseLinear1Lip,
    StepFunction,
)
from app.shared.operators.operator_models import RealArray
from app.shared.triple.triple_models import AlgebraMode, DensityMatrix, SpectralTripleSpec

logger = get_logger(__name__)

SIGN_TOL = 1e-12


def _masses_on(support: RealArray, measure: DiscreteMeasure1D) -> RealArray:
    masses = np.zeros(support.size)
    masses[np.searchsorted(support, measure.atoms)] = measure.weights
    return masses


def cumulative_difference(mu: DiscreteMeasure1D, nu: DiscreteMeasure1D) -> StepFunction:
    """w(x) = μ((−∞, x]) − ν((−∞, x]) on the merged support.

    Returns:
        Step function with one value per gap between consecutive support points.
    """
    support = np.union1d(mu.atoms, nu.atoms)
    running = np.cumsum(_masses_on(support, mu) - _masses_on(support, nu))
    return StepFunction(breakpoints=support.tolist(), values=running[:-1].tolist())


def w1_distance(mu: DiscreteMeasure1D, nu: DiscreteMeasure1D) -> float:
    """Kantorovich distance ∫|w(x)| dx."""
    w = cumulative_difference(mu, nu)
    distance = float(np.sum(np.abs(w.values) * np.diff(w.breakpoints)))
    logger.debug("transport.w1.computed", atoms=len(w.breakpoints), distance=distance)
    return distance


def optimal_potential(mu: DiscreteMeasure1D, nu: DiscreteMeasure1D) -> PiecewiseLinear1Lip:
    """Primitive of sign(w), with sign taken as 0 where |w| ≤ 1e-12."""
    w = cumulative_difference(mu, nu)
    values = np.asarray(w.values)
    slopes = np.where(np.abs(values) <= SIGN_TOL, 0.0, np.sign(values))
    return PiecewiseLinear1Lip(breakpoints=w.breakpoints, slopes=slopes.tolist())


def potential_pairing(phi: PiecewiseLinear1Lip, mu: DiscreteMeasure1D, nu: DiscreteMeasure1D) -> float:
    """∫φ d(μ − ν).

    For the optimal potential this is −w1_distance: integrating by parts
    gives −∫φ'w dx = −∫|w| dx.
    """
    on_mu = sum(weight * phi.evaluate(x) for x, weight in zip(mu.atoms, mu.weights, strict=True))
    on_nu = sum(weight * phi.evaluate(x) for x, weight in zip(nu.atoms, nu.weights, strict=True))
    return on_mu - on_nu


def line_triple(positions: list[float] | RealArray) -> SpectralTripleSpec:
    """Diagonal-mode triple of the path graph on the given points.

    Lᵢ = (E_{i,i+1} + E_{i+1,i}) / (x_{i+1} − x_i), so for diagonal a the
    seminorm is the discrete Lipschitz constant maxᵢ |a_{i+1} − a_i| / (x_{i+1} − x_i).

    Raises:
        ArgumentError: If there are fewer than 2 points or they are not strictly increasing.
    """
    x = np.asarray(positions, dtype=np.float64)
    if x.ndim != 1 or x.size < 2:
        raise ArgumentError(f"line triple needs at least 2 positions, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ArgumentError("positions must be finite")
    gaps = np.diff(x)
    if np.any(gaps <= 0):
        raise ArgumentError("positions must be strictly increasing")

    k = x.size
    blocks = np.zeros((k - 1, k, k), dtype=np.complex128)
    for i, h in enumerate(gaps):
        blocks[i, i, i + 1] = blocks[i, i + 1, i] = 1.0 / h
    return SpectralTripleSpec(L=blocks, algebra=AlgebraMode.DIAGONAL)


def line_bridge(
    mu: DiscreteMeasure1D, nu: DiscreteMeasure1D
) -> tuple[SpectralTripleSpec, DensityMatrix, DensityMatrix]:
    """Line triple on the merged support with μ and ν as diagonal states.

    Raises:
        ArgumentError: If the merged support is a single point.
    """
    support = np.union1d(mu.atoms, nu.atoms)
    triple = line_triple(support)
    rho_mu = DensityMatrix.diagonal(_masses_on(support, mu))
    rho_nu = DensityMatrix.diagonal(_masses_on(support, nu))
    logger.debug("transport.bridge.build_completed", points=int(support.size))
    return triple, rho_mu, rho_nu
