"""Pydantic models for the JSON documents read and written by the CLI.

Complex entries are [re, im] pairs and matrices are nested row lists of
such pairs. Floats are written in their shortest round-trip form, and
+∞ is written as the bare token ``Infinity``.
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from app.features.distance_solver.distance_solver_models import CertificateStatus
from app.shared.triple.triple_models import AlgebraMode

ComplexPair = tuple[float, float]
MatrixDoc = list[list[ComplexPair]]


class TripleDoc(BaseModel):
    """Serialized spectral triple."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1)
    N: int = Field(..., ge=1)
    algebra: AlgebraMode = AlgebraMode.FULL
    L: list[MatrixDoc] = Field(..., min_length=1)


class SolverDoc(BaseModel):
    """Optional solver overrides stored with a problem."""

    model_config = ConfigDict(extra="forbid")

    tol_gap: float | None = None
    max_iter: int | None = None
    check_every: int | None = None
    restrict_antihermitian: bool | None = None
    step_ratio: float | None = None
    seed: int | None = None


class ProblemFile(BaseModel):
    """Triple, optional pair of states and optional solver settings."""

    model_config = ConfigDict(extra="forbid")

    triple: TripleDoc
    rho1: MatrixDoc | None = None
    rho2: MatrixDoc | None = None
    solver: SolverDoc | None = None


class CertificateFile(BaseModel):
    """Result of ``distance``."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    lower: float
    upper: float
    gap: float
    status: CertificateStatus
    iterations: int
    primal_witness: MatrixDoc | None = None
    dual_witness: list[MatrixDoc] | None = None
    kernel_dimension: int
    connected: bool
    runtime_ms: float
    operator_norm_estimate: float | None = None
    constraint_residual: float | None = None
    witness_seminorm: float | None = None


class CheckReport(BaseModel):
    """Result of ``check``: connectedness and, with states, the finiteness verdict."""

    kernel_dimension: int
    connected: bool
    finite: bool | None = None
    max_violation: float | None = None
    witness: MatrixDoc | None = Field(
        default=None, description="Kernel element separating the states when the distance is infinite"
    )
    witness_pairing: float | None = None


class PotentialFile(BaseModel):
    """Serialized 1-Lipschitz potential."""

    breakpoints: list[float]
    slopes: list[float]
    start_value: float


class W1Report(BaseModel):
    """Result of ``w1``."""

    distance: float
    potential_pairing: float


class GenParams(BaseModel):
    """Parameters of ``gen``; each kind reads its own subset."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["two-point", "line", "random"]
    lam: float = 1.0
    positions: list[float] = Field(default_factory=list)
    weights1: list[float] = Field(default_factory=list)
    weights2: list[float] = Field(default_factory=list)
    n: int = 2
    N: int = 1
    seed: int = 0
    algebra: AlgebraMode = AlgebraMode.FULL
