"""Pydantic models for the distance solver."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import Settings
from app.shared.operators.operator_models import HermitianMatrix
from app.shared.triple.triple_models import OneForm


class CertificateStatus(StrEnum):
    """Outcome of a distance computation."""

    CONVERGED = "Converged"
    MAX_ITER = "MaxIter"
    INFINITE = "Infinite"
    ZERO_DISTANCE = "ZeroDistance"


class SolverConfig(BaseModel):
    """Parameters of the primal-dual iteration."""

    model_config = ConfigDict(frozen=True)

    tol_gap: float = Field(default=1e-7, gt=0, description="Relative duality gap target")
    max_iter: int = Field(default=200_000, ge=1, description="Iteration cap")
    check_every: int = Field(default=100, ge=1, description="Certification interval")
    restrict_antihermitian: bool = Field(
        default=False, description="Search the dual variable among anti-Hermitian blocks only"
    )
    step_ratio: float = Field(default=1.0, gt=0, description="Ratio τ/σ of primal-dual steps")
    seed: int = Field(default=0, description="Seed for the power-iteration start vector")

    @classmethod
    def from_settings(cls, settings: Settings) -> "SolverConfig":
        """Default configuration taken from application settings."""
        return cls(
            tol_gap=settings.solver_tol_gap,
            max_iter=settings.solver_max_iter,
            check_every=settings.solver_check_every,
            step_ratio=settings.solver_step_ratio,
            seed=settings.solver_seed,
        )


class CertificationStep(BaseModel):
    """Bounds obtained by rounding the iterates at one certification point."""

    model_config = ConfigDict(frozen=True)

    iteration: int
    lower: float
    upper: float


class DistanceCertificate(BaseModel):
    """Certified bracket [lower, upper] around d_D(ρ₁, ρ₂) with its witnesses.

    ``primal_witness`` is a Hermitian a with L(a) ≤ 1 and Re Tr((ρ₁ − ρ₂) a) = lower.
    ``dual_witness`` is a one-form u with K(u) = ρ₁ − ρ₂ and Σᵢ ‖uᵢ‖_* = upper.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lower: float
    upper: float
    gap: float
    status: CertificateStatus
    iterations: int = 0
    primal_witness: HermitianMatrix | None = None
    dual_witness: OneForm | None = None
    kernel_dimension: int
    connected: bool
    history: list[CertificationStep] = Field(default_factory=list)
    operator_norm_estimate: float | None = Field(default=None, description="Estimate of ‖K‖")
    constraint_residual: float | None = Field(
        default=None, description="‖K(u*) − (ρ₁ − ρ₂)‖_F of the dual witness"
    )
    witness_seminorm: float | None = Field(default=None, description="L(a*) of the primal witness")

    @property
    def relative_gap(self) -> float:
        """(upper − lower) / max(1, upper)."""
        return self.gap / max(1.0, self.upper)
