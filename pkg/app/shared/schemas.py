"""Shared Pydantic schemas for common patterns."""

from pydantic import BaseModel


class ErrorResponse(BaseModel):
    """Standard error diagnostic format.

    Written to stderr by the CLI error handler so that every failure carries
    the same machine-readable shape.

    Example:
        ErrorResponse(
            error="expected 2 blocks, got 3",
            type="ProblemFileError",
            field="triple.L",
            line=4,
        )
    """

    error: str
    type: str
    detail: str | None = None
    field: str | None = None
    line: int | None = None
