"""Tests for the distance, check, w1 and gen commands."""

import json
import math
from collections.abc import Callable
from io import StringIO
from pathlib import Path

import pytest

from app.cli.commands import cmd_check, cmd_distance, cmd_gen, cmd_w1
from app.cli.converters import parse_certificate, serialize_problem
from app.cli.generators import generate_random
from app.cli.models import GenParams
from app.core.exceptions import (
    EXIT_INFINITE,
    EXIT_MAX_ITER,
    EXIT_OK,
    ProblemFileError,
)
from app.features.distance_solver.distance_solver_models import CertificateStatus
from app.shared.triple.triple_factory import two_point_triple
from app.shared.triple.triple_models import DensityMatrix

WriteFile = Callable[[str, str], str]


def test_distance_two_point(two_point_file: str) -> None:
    """Test the two-point problem converges to 1 with exit code 0."""
    out = StringIO()

    code = cmd_distance(two_point_file, out=out)

    cert = parse_certificate(out.getvalue())
    assert code == EXIT_OK
    assert cert.status is CertificateStatus.CONVERGED
    assert cert.lower == pytest.approx(1.0, abs=1e-6)
    assert cert.upper == pytest.approx(1.0, abs=1e-6)
    assert cert.runtime_ms >= 0


def test_distance_equal_states(write_file: WriteFile) -> None:
    """Test ρ₁ = ρ₂ reports ZeroDistance with exit code 0."""
    rho = DensityMatrix.diagonal([0.5, 0.5])
    path = write_file("same.json", serialize_problem(two_point_triple(), rho, rho))
    out = StringIO()

    code = cmd_distance(path, out=out)

    cert = parse_certificate(out.getvalue())
    assert code == EXIT_OK
    assert cert.status is CertificateStatus.ZERO_DISTANCE
    assert cert.upper == 0.0


def test_distance_infinite(pauli_z_file: str) -> None:
    """Test the σz problem exits with 2 and an Infinite certificate."""
    out = StringIO()

    code = cmd_distance(pauli_z_file, out=out)

    cert = parse_certificate(out.getvalue())
    assert code == EXIT_INFINITE
    assert cert.status is CertificateStatus.INFINITE
    assert math.isinf(cert.upper)


def test_distance_iteration_cap(write_file: WriteFile) -> None:
    """Test a tiny iteration cap exits with 3."""
    path = write_file("random.json", generate_random(3, 2, seed=1).model_dump_json())
    out = StringIO()

    code = cmd_distance(path, tol=1e-12, max_iter=1, out=out)

    cert = parse_certificate(out.getvalue())
    assert code == EXIT_MAX_ITER
    assert cert.status is CertificateStatus.MAX_ITER
    assert cert.iterations == 1
    assert cert.lower <= cert.upper


def test_distance_needs_both_states(triple_only_file: str) -> None:
    """Test a file without states is a problem-file error."""
    with pytest.raises(ProblemFileError) as exc_info:
        cmd_distance(triple_only_file, out=StringIO())

    assert exc_info.value.field == "rho1"


def test_distance_missing_file(tmp_path: Path) -> None:
    """Test an unreadable path is a problem-file error."""
    with pytest.raises(ProblemFileError, match="cannot read"):
        cmd_distance(str(tmp_path / "missing.json"), out=StringIO())


def test_check_generic_triple(write_file: WriteFile) -> None:
    """Test a generic two-block triple is connected with finite distance."""
    path = write_file("random.json", generate_random(4, 2, seed=3).model_dump_json())
    out = StringIO()

    code = cmd_check(path, out=out)

    report = json.loads(out.getvalue())
    assert code == EXIT_OK
    assert report["connected"] is True
    assert report["kernel_dimension"] == 1
    assert report["finite"] is True
    assert "witness" not in report


def test_check_without_states(triple_only_file: str) -> None:
    """Test L = σx reports the two-dimensional commutant and no verdict."""
    out = StringIO()

    cmd_check(triple_only_file, out=out)

    report = json.loads(out.getvalue())
    assert report == {"kernel_dimension": 2, "connected": False}


def test_check_names_kernel_witness(pauli_z_file: str) -> None:
    """Test the σz pair reports a witness with pairing 2."""
    out = StringIO()

    cmd_check(pauli_z_file, out=out)

    report = json.loads(out.getvalue())
    assert report["finite"] is False
    assert report["witness_pairing"] == pytest.approx(2.0)
    assert report["witness"][0][0] == pytest.approx([1.0, 0.0])


@pytest.mark.parametrize(
    ("mu", "nu", "expected"),
    [
        ("[[0, 1]]", "[[1, 1]]", 1.0),
        ("[[0, 1]]", "[[-1, 0.5], [1, 0.5]]", 1.0),
        ("[[0, 0.5], [2, 0.5]]", "[[0, 0.5], [2, 0.5]]", 0.0),
    ],
)
def test_w1_examples(mu: str, nu: str, expected: float) -> None:
    """Test the worked W1 values and the matching potential pairing."""
    out = StringIO()

    code = cmd_w1(mu, nu, out=out)

    report = json.loads(out.getvalue())
    assert code == EXIT_OK
    assert report["distance"] == expected
    assert report["potential_pairing"] == -expected


def test_w1_writes_potential(tmp_path: Path) -> None:
    """Test --potential dumps the optimal potential."""
    target = tmp_path / "phi.json"

    cmd_w1("[[0, 1]]", "[[-1, 0.5], [1, 0.5]]", potential_path=str(target), out=StringIO())

    potential = json.loads(target.read_text(encoding="utf-8"))
    assert potential == {"breakpoints": [-1.0, 0.0, 1.0], "slopes": [-1.0, 1.0], "start_value": 0.0}


def test_gen_two_point_distance(write_file: WriteFile) -> None:
    """Test gen two-point --lambda 2 produces a problem at distance 0.5."""
    generated = StringIO()
    cmd_gen(GenParams(kind="two-point", lam=2.0), out=generated)
    path = write_file("gen.json", generated.getvalue())
    out = StringIO()

    cmd_distance(path, out=out)

    cert = parse_certificate(out.getvalue())
    assert cert.lower == pytest.approx(0.5, abs=1e-6)
    assert cert.upper == pytest.approx(0.5, abs=1e-6)


def test_gen_random_is_deterministic() -> None:
    """Test equal parameters give byte-identical output."""
    params = GenParams(kind="random", n=4, N=2, seed=7)
    first, second = StringIO(), StringIO()

    cmd_gen(params, out=first)
    cmd_gen(params, out=second)

    assert first.getvalue() == second.getvalue()
