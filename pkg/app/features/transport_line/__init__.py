"""Transport Line - exact Wasserstein-1 on the real line and its spectral triple."""

from app.features.transport_line.transport_line_models import (
    DiscreteMeasure1D,
    PiecewiseLinear1Lip,
    StepFunction,
)

__all__ = [
    "DiscreteMeasure1D",
    "PiecewiseLinear1Lip",
    "StepFunction",
]
