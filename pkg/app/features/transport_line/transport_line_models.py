"""Pydantic models for atomic measures and piecewise functions on the line."""

from collections.abc import Iterable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.exceptions import InvalidMeasureError, ShapeError

MASS_TOL = 1e-12


class DiscreteMeasure1D(BaseModel):
    """Probability measure Σⱼ wⱼ δ_{xⱼ} with strictly increasing atoms."""

    model_config = ConfigDict(frozen=True)

    atoms: list[float] = Field(..., min_length=1, description="Strictly increasing positions")
    weights: list[float] = Field(..., min_length=1, description="Nonnegative masses summing to 1")

    @model_validator(mode="after")
    def _check_measure(self) -> "DiscreteMeasure1D":
        if len(self.atoms) != len(self.weights):
            raise InvalidMeasureError(
                f"{len(self.atoms)} atoms but {len(self.weights)} weights"
            )
        atoms = np.asarray(self.atoms)
        weights = np.asarray(self.weights)
        if not (np.all(np.isfinite(atoms)) and np.all(np.isfinite(weights))):
            raise InvalidMeasureError("atoms and weights must be finite")
        if np.any(np.diff(atoms) <= 0):
            raise InvalidMeasureError("atoms must be strictly increasing")
        if np.any(weights < 0):
            raise InvalidMeasureError("weights must be nonnegative")
        total = float(np.sum(weights))
        if abs(total - 1.0) > MASS_TOL:
            raise InvalidMeasureError(f"total mass is {total!r}, expected 1")
        return self

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]]) -> "DiscreteMeasure1D":
        """Build a measure from unordered (position, weight) pairs.

        Pairs are sorted by position and repeated positions are merged.
        """
        merged: dict[float, float] = {}
        for position, weight in pairs:
            merged[float(position)] = merged.get(float(position), 0.0) + float(weight)
        if not merged:
            raise InvalidMeasureError("a measure needs at least one atom")
        atoms = sorted(merged)
        return cls(atoms=atoms, weights=[merged[x] for x in atoms])

    @classmethod
    def dirac(cls, position: float) -> "DiscreteMeasure1D":
        """Unit mass at one point."""
        return cls(atoms=[position], weights=[1.0])

    def shifted(self, offset: float) -> "DiscreteMeasure1D":
        """Translate every atom by ``offset``."""
        return DiscreteMeasure1D(atoms=[x + offset for x in self.atoms], weights=self.weights)

    def dilated(self, factor: float) -> "DiscreteMeasure1D":
        """Multiply every atom by ``factor`` > 0."""
        if factor <= 0:
            raise InvalidMeasureError(f"dilation factor must be positive, got {factor}")
        return DiscreteMeasure1D(atoms=[x * factor for x in self.atoms], weights=self.weights)


class StepFunction(BaseModel):
    """Right-continuous step function, zero outside [b₀, b_last).

    ``values[j]`` is the value on [breakpoints[j], breakpoints[j + 1]).
    """

    model_config = ConfigDict(frozen=True)

    breakpoints: list[float]
    values: list[float]

    @model_validator(mode="after")
    def _check_lengths(self) -> "StepFunction":
        if len(self.values) != max(len(self.breakpoints) - 1, 0):
            raise ShapeError(
                f"{len(self.breakpoints)} breakpoints need {len(self.breakpoints) - 1} values, "
                f"got {len(self.values)}"
            )
        return self

    def evaluate(self, x: float) -> float:
        """Value at x."""
        j = int(np.searchsorted(self.breakpoints, x, side="right")) - 1
        if j < 0 or j >= len(self.values):
            return 0.0
        return self.values[j]


class PiecewiseLinear1Lip(BaseModel):
    """Continuous piecewise-linear function with slopes in {−1, 0, +1}.

    Constant to the left of the first breakpoint and to the right of the last.
    """

    model_config = ConfigDict(frozen=True)

    breakpoints: list[float]
    slopes: list[float]
    start_value: float = 0.0

    @model_validator(mode="after")
    def _check_slopes(self) -> "PiecewiseLinear1Lip":
        if len(self.slopes) != max(len(self.breakpoints) - 1, 0):
            raise ShapeError(
                f"{len(self.breakpoints)} breakpoints need {len(self.breakpoints) - 1} slopes, "
                f"got {len(self.slopes)}"
            )
        if any(s not in (-1.0, 0.0, 1.0) for s in self.slopes):
            raise ShapeError("slopes must be -1, 0 or +1")
        return self

    def node_values(self) -> list[float]:
        """Values at the breakpoints."""
        increments = np.asarray(self.slopes) * np.diff(self.breakpoints)
        return [self.start_value, *(self.start_value + np.cumsum(increments)).tolist()]

    def evaluate(self, x: float) -> float:
        """Value at x."""
        return float(np.interp(x, self.breakpoints, self.node_values()))
