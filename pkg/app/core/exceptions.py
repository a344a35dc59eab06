"""Custom exception classes and the CLI error handler."""

import sys
from typing import TextIO

from app.core.logging import get_logger
from app.shared.schemas import ErrorResponse

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFINITE = 2
EXIT_MAX_ITER = 3


# Custom exception classes
class SpectralDistanceError(Exception):
    """Base exception for every error raised by this package."""

    pass


class ShapeError(SpectralDistanceError):
    """Exception raised when matrix or block dimensions are incompatible."""

    pass


class ArgumentError(SpectralDistanceError):
    """Exception raised when a numeric argument is outside its domain."""

    pass


class NotHermitianError(ArgumentError):
    """Exception raised in strict mode when a matrix is not Hermitian."""

    pass


class InvalidStateError(ArgumentError):
    """Exception raised when a density matrix is not a state."""

    pass


class InvalidMeasureError(ArgumentError):
    """Exception raised when a discrete measure is not a probability measure."""

    pass


class ModeError(SpectralDistanceError):
    """Exception raised when an element lies outside the represented algebra."""

    pass


class NumericError(SpectralDistanceError):
    """Exception raised when a decomposition fails or does not reconstruct its input."""

    def __init__(self, message: str, residual: float | None = None) -> None:
        super().__init__(message)
        self.residual = residual


class SolverError(SpectralDistanceError):
    """Exception raised when the distance solver cannot factor its operators."""

    pass


class InfeasibleConstraintError(SolverError):
    """Exception raised when the affine projection leaves a residual above threshold."""

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(message)
        self.residual = residual


class ProblemFileError(SpectralDistanceError):
    """Exception raised when an input document cannot be parsed or validated."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None) -> None:
        super().__init__(message)
        self.field = field
        self.line = line


def handle_cli_error(exc: SpectralDistanceError, stream: TextIO | None = None) -> int:
    """Log an error and write its diagnostic to stderr.

    Args:
        exc: The error raised while executing a command.
        stream: Destination for the diagnostic document (stderr by default).

    Returns:
        The exit code for the error.
    """
    logger.error(
        "cli.command.failed",
        error_type=type(exc).__name__,
        error_message=str(exc),
    )

    response = ErrorResponse(
        error=str(exc),
        type=type(exc).__name__,
        detail=_detail_for(exc),
        field=getattr(exc, "field", None),
        line=getattr(exc, "line", None),
    )
    out = stream or sys.stderr
    out.write(response.model_dump_json(exclude_none=True) + "\n")
    return EXIT_ERROR


def _detail_for(exc: SpectralDistanceError) -> str | None:
    residual = getattr(exc, "residual", None)
    if residual is None:
        return None
    return f"residual={residual!r}"
