"""Dense complex-matrix kernel - shared by every solver path."""

from app.shared.operators.operator_models import (
    ComplexArray,
    HermitianMatrix,
    RealArray,
)

__all__ = ["ComplexArray", "HermitianMatrix", "RealArray"]
