"""Implementations of the ``distance``, ``check``, ``w1`` and ``gen`` commands.

Each command writes one JSON document to ``out`` and returns its exit code.
Errors are raised as ``SpectralDistanceError`` and turned into exit code 1
by the entry point.
"""

import sys
import time
from pathlib import Path
from typing import TextIO

from app.cli.converters import (
    parse_measure,
    parse_problem,
    read_text,
    report_to_doc,
    resolve_solver_config,
    serialize_certificate,
)
from app.cli.generators import generate
from app.cli.models import GenParams, PotentialFile, W1Report
from app.core.config import Settings, get_settings
from app.core.exceptions import (
    EXIT_ERROR,
    EXIT_INFINITE,
    EXIT_MAX_ITER,
    EXIT_OK,
    ProblemFileError,
)
from app.core.logging import get_logger
from app.features.distance_solver.distance_solver_models import CertificateStatus
from app.features.distance_solver.distance_solver_service import solve_distance
from app.features.transport_line.transport_line_service import (
    optimal_potential,
    potential_pairing,
    w1_distance,
)
from app.shared.triple.triple_geometry import finite_distance_report, kernel_basis

logger = get_logger(__name__)

STATUS_EXIT_CODES: dict[CertificateStatus, int] = {
    CertificateStatus.CONVERGED: EXIT_OK,
    CertificateStatus.ZERO_DISTANCE: EXIT_OK,
    CertificateStatus.INFINITE: EXIT_INFINITE,
    CertificateStatus.MAX_ITER: EXIT_MAX_ITER,
}


def _emit(out: TextIO | None, document: str) -> None:
    (out or sys.stdout).write(document + "\n")


def cmd_distance(
    source: str,
    *,
    tol: float | None = None,
    max_iter: int | None = None,
    anti_hermitian: bool | None = None,
    seed: int | None = None,
    settings: Settings | None = None,
    out: TextIO | None = None,
) -> int:
    """Solve a problem file and print its certificate.

    Returns:
        0 on Converged or ZeroDistance, 2 on Infinite, 3 on MaxIter.

    Raises:
        ProblemFileError: If the file is unreadable, invalid or has no states.
        ArgumentError: If the merged solver settings are invalid.
    """
    settings = settings or get_settings()
    problem = parse_problem(read_text(source), strict=settings.strict_hermitian)
    if problem.rho1 is None or problem.rho2 is None:
        raise ProblemFileError(
            "distance needs both states", field="rho1" if problem.rho1 is None else "rho2"
        )
    cfg = resolve_solver_config(
        settings,
        problem.solver,
        tol_gap=tol,
        max_iter=max_iter,
        restrict_antihermitian=anti_hermitian,
        seed=seed,
    )

    start = time.perf_counter()
    cert = solve_distance(problem.triple, problem.rho1, problem.rho2, cfg)
    runtime_ms = (time.perf_counter() - start) * 1000

    _emit(out, serialize_certificate(cert, runtime_ms))
    logger.info("cli.distance.command_completed", status=cert.status.value, runtime_ms=runtime_ms)
    return STATUS_EXIT_CODES.get(cert.status, EXIT_ERROR)


def cmd_check(source: str, *, settings: Settings | None = None, out: TextIO | None = None) -> int:
    """Print the kernel dimension, connectedness and, with states, the finiteness verdict."""
    settings = settings or get_settings()
    problem = parse_problem(read_text(source), strict=settings.strict_hermitian)
    kernel = kernel_basis(problem.triple)
    report = None
    if problem.rho1 is not None and problem.rho2 is not None:
        report = finite_distance_report(problem.triple, problem.rho1, problem.rho2, kernel)
    document = report_to_doc(report, kernel.dimension, kernel.dimension == 1)
    _emit(out, document.model_dump_json(indent=2, exclude_none=True))
    return EXIT_OK


def cmd_w1(
    mu_source: str,
    nu_source: str,
    *,
    potential_path: str | None = None,
    out: TextIO | None = None,
) -> int:
    """Print the 1D Wasserstein distance, optionally dumping the optimal potential.

    ``mu_source`` and ``nu_source`` are inline JSON arrays of [position, weight]
    pairs or paths to files containing one.
    """
    mu = parse_measure(mu_source)
    nu = parse_measure(nu_source)
    phi = optimal_potential(mu, nu)
    report = W1Report(distance=w1_distance(mu, nu), potential_pairing=potential_pairing(phi, mu, nu))
    if potential_path is not None:
        document = PotentialFile(
            breakpoints=phi.breakpoints, slopes=phi.slopes, start_value=phi.start_value
        )
        try:
            Path(potential_path).write_text(
                document.model_dump_json(indent=2) + "\n", encoding="utf-8"
            )
        except OSError as e:
            raise ProblemFileError(f"cannot write {potential_path}: {e.strerror}") from e
    _emit(out, report.model_dump_json(indent=2))
    return EXIT_OK


def cmd_gen(params: GenParams, *, out: TextIO | None = None) -> int:
    """Print a generated problem file."""
    _emit(out, generate(params).model_dump_json(indent=2, exclude_none=True))
    return EXIT_OK
