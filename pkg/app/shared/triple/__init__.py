"""Finite spectral triples, states, one-forms and the derivation ∇."""

from app.shared.triple.triple_models import (
    AlgebraMode,
    DensityMatrix,
    FiniteDistanceReport,
    KernelBasis,
    OneForm,
    SpectralTripleSpec,
)

__all__ = [
    "AlgebraMode",
    "DensityMatrix",
    "FiniteDistanceReport",
    "KernelBasis",
    "OneForm",
    "SpectralTripleSpec",
]
