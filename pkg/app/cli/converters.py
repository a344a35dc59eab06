"""Conversion between JSON documents and domain objects.

Parsing goes through ``json.loads`` (which accepts ``Infinity``) and then
model validation. Failures become ``ProblemFileError`` carrying the dotted
field path and, when it can be located, the line of the offending key.
"""

import json
import re
import sys
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from app.cli.models import (
    CertificateFile,
    CheckReport,
    MatrixDoc,
    ProblemFile,
    SolverDoc,
    TripleDoc,
)
from app.core.config import Settings
from app.core.exceptions import (
    ArgumentError,
    InvalidMeasureError,
    ProblemFileError,
    ShapeError,
    SpectralDistanceError,
)
from app.features.distance_solver.distance_solver_models import DistanceCertificate, SolverConfig
from app.features.transport_line.transport_line_models import DiscreteMeasure1D
from app.shared.operators.operator_models import ComplexArray
from app.shared.triple.triple_models import DensityMatrix, FiniteDistanceReport, SpectralTripleSpec


class Problem(BaseModel):
    """A parsed problem file."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    triple: SpectralTripleSpec
    rho1: DensityMatrix | None = None
    rho2: DensityMatrix | None = None
    solver: SolverDoc | None = None


def matrix_to_doc(m: ComplexArray) -> MatrixDoc:
    """Nested [re, im] rows of a complex matrix."""
    return [[(float(z.real), float(z.imag)) for z in row] for row in np.asarray(m)]


def doc_to_matrix(doc: MatrixDoc) -> ComplexArray:
    """Complex matrix from nested [re, im] rows.

    Raises:
        ShapeError: If the document is empty or not a grid of pairs.
    """
    pairs = np.asarray(doc, dtype=np.float64)
    if pairs.ndim != 3 or pairs.shape[-1] != 2 or pairs.size == 0:
        raise ShapeError("a matrix must be a non-empty list of rows of [re, im] pairs")
    return pairs[..., 0] + 1j * pairs[..., 1]


def _line_of(text: str, key: str) -> int | None:
    match = re.search(rf'"{re.escape(key)}"\s*:', text)
    return text.count("\n", 0, match.start()) + 1 if match else None


def _load_json(text: str, document: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"{document} is not valid JSON: {e.msg}", line=e.lineno) from e


def _validation_failure(e: ValidationError, text: str, document: str) -> ProblemFileError:
    first = e.errors()[0]
    loc = [str(part) for part in first["loc"]]
    field = ".".join(loc) or None
    keys = [part for part in loc if not part.isdigit()]
    line = _line_of(text, keys[-1]) if keys else None
    return ProblemFileError(f"invalid {document}: {first['msg']}", field=field, line=line)


def read_text(source: str) -> str:
    """Contents of a file, or of stdin when ``source`` is ``-``.

    Raises:
        ProblemFileError: If the file cannot be read.
    """
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemFileError(f"cannot read {source}: {e.strerror}") from e


def triple_to_doc(t: SpectralTripleSpec) -> TripleDoc:
    """Serializable form of a triple."""
    return TripleDoc(n=t.n, N=t.N, algebra=t.algebra, L=[matrix_to_doc(block) for block in t.L])


def doc_to_triple(doc: TripleDoc, *, strict: bool = False) -> SpectralTripleSpec:
    """Triple from its document, checking the declared n and N.

    Raises:
        ProblemFileError: If the blocks disagree with n or N or are malformed.
    """
    if len(doc.L) != doc.N:
        raise ProblemFileError(f"expected {doc.N} blocks, got {len(doc.L)}", field="triple.L")
    try:
        t = SpectralTripleSpec.from_blocks(
            [doc_to_matrix(block) for block in doc.L], doc.algebra, strict=strict
        )
    except (SpectralDistanceError, ValueError) as e:
        raise ProblemFileError(f"invalid triple: {e}", field="triple.L") from e
    if t.n != doc.n:
        raise ProblemFileError(f"blocks are {t.n}×{t.n} but n = {doc.n}", field="triple.n")
    return t


def _doc_to_state(doc: MatrixDoc, field: str) -> DensityMatrix:
    try:
        return DensityMatrix(entries=doc_to_matrix(doc))
    except (SpectralDistanceError, ValueError) as e:
        raise ProblemFileError(f"invalid state: {e}", field=field) from e


def parse_problem(text: str, *, strict: bool = False) -> Problem:
    """Parse a problem document.

    Args:
        text: JSON text.
        strict: Reject non-Hermitian blocks instead of symmetrizing them.

    Raises:
        ProblemFileError: On malformed JSON or invalid content.
    """
    raw = _load_json(text, "problem file")
    try:
        doc = ProblemFile.model_validate(raw)
    except ValidationError as e:
        raise _validation_failure(e, text, "problem file") from e

    try:
        t = doc_to_triple(doc.triple, strict=strict)
        rho1 = None if doc.rho1 is None else _doc_to_state(doc.rho1, "rho1")
        rho2 = None if doc.rho2 is None else _doc_to_state(doc.rho2, "rho2")
    except ProblemFileError as e:
        if e.line is None and e.field is not None:
            e.line = _line_of(text, e.field.split(".")[-1])
        raise
    return Problem(triple=t, rho1=rho1, rho2=rho2, solver=doc.solver)


def problem_to_doc(
    t: SpectralTripleSpec,
    rho1: DensityMatrix | None = None,
    rho2: DensityMatrix | None = None,
    solver: SolverDoc | None = None,
) -> ProblemFile:
    """Document form of a problem."""
    return ProblemFile(
        triple=triple_to_doc(t),
        rho1=None if rho1 is None else matrix_to_doc(rho1.entries),
        rho2=None if rho2 is None else matrix_to_doc(rho2.entries),
        solver=solver,
    )


def serialize_problem(
    t: SpectralTripleSpec,
    rho1: DensityMatrix | None = None,
    rho2: DensityMatrix | None = None,
    solver: SolverDoc | None = None,
) -> str:
    """JSON text of a problem."""
    return problem_to_doc(t, rho1, rho2, solver).model_dump_json(indent=2, exclude_none=True)


def certificate_to_doc(cert: DistanceCertificate, runtime_ms: float) -> CertificateFile:
    """Document form of a certificate."""
    return CertificateFile(
        lower=cert.lower,
        upper=cert.upper,
        gap=cert.gap,
        status=cert.status,
        iterations=cert.iterations,
        primal_witness=None
        if cert.primal_witness is None
        else matrix_to_doc(cert.primal_witness.entries),
        dual_witness=None
        if cert.dual_witness is None
        else [matrix_to_doc(block) for block in cert.dual_witness.blocks],
        kernel_dimension=cert.kernel_dimension,
        connected=cert.connected,
        runtime_ms=runtime_ms,
        operator_norm_estimate=cert.operator_norm_estimate,
        constraint_residual=cert.constraint_residual,
        witness_seminorm=cert.witness_seminorm,
    )


def serialize_certificate(cert: DistanceCertificate, runtime_ms: float) -> str:
    """JSON text of a certificate; +∞ bounds are written as ``Infinity``."""
    return certificate_to_doc(cert, runtime_ms).model_dump_json(indent=2)


def parse_certificate(text: str) -> CertificateFile:
    """Parse a certificate document.

    Raises:
        ProblemFileError: On malformed JSON or invalid content.
    """
    raw = _load_json(text, "certificate")
    try:
        return CertificateFile.model_validate(raw)
    except ValidationError as e:
        raise _validation_failure(e, text, "certificate") from e


def report_to_doc(
    report: FiniteDistanceReport | None, kernel_dimension: int, connected: bool
) -> CheckReport:
    """Document form of a connectedness check with an optional finiteness verdict."""
    if report is None:
        return CheckReport(kernel_dimension=kernel_dimension, connected=connected)
    return CheckReport(
        kernel_dimension=report.kernel_dimension,
        connected=report.connected,
        finite=report.finite,
        max_violation=report.max_violation,
        witness=None if report.witness is None else matrix_to_doc(report.witness),
        witness_pairing=report.witness_pairing,
    )


def parse_measure(source: str) -> DiscreteMeasure1D:
    """Measure from inline JSON or from a file holding ``[[position, weight], ...]``.

    Raises:
        ProblemFileError: If the text is not a JSON list of pairs.
        InvalidMeasureError: If the pairs do not form a probability measure.
    """
    text = source if source.lstrip().startswith("[") else read_text(source)
    raw = _load_json(text, "measure")
    if not isinstance(raw, list) or not all(
        isinstance(pair, list) and len(pair) == 2 for pair in raw
    ):
        raise ProblemFileError("a measure is a JSON array of [position, weight] pairs")
    try:
        return DiscreteMeasure1D.from_pairs((float(x), float(w)) for x, w in raw)
    except (TypeError, ValueError) as e:
        raise InvalidMeasureError(f"invalid measure: {e}") from e


def resolve_solver_config(
    settings: Settings,
    file_solver: SolverDoc | None = None,
    **overrides: Any,
) -> SolverConfig:
    """Merge settings defaults, the file's solver object and command-line flags.

    Later sources win; ``None`` values are ignored.

    Raises:
        ArgumentError: If the merged configuration is invalid.
    """
    merged = SolverConfig.from_settings(settings).model_dump()
    if file_solver is not None:
        merged.update(file_solver.model_dump(exclude_none=True))
    merged.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return SolverConfig.model_validate(merged)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise ArgumentError(f"invalid solver setting {field}: {first['msg']}") from e
