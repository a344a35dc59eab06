"""Distance Solver - certified spectral distance between states of a finite triple."""

from app.features.distance_solver.distance_solver_models import (
    CertificateStatus,
    CertificationStep,
    DistanceCertificate,
    SolverConfig,
)

__all__ = [
    "CertificateStatus",
    "CertificationStep",
    "DistanceCertificate",
    "SolverConfig",
]
