"""Pytest fixtures for end-to-end tests.

End-to-end tests drive ``main()`` with an argv list and read stdout and
stderr through ``capsys``. Problem files are written under ``tmp_path``.
"""

from pathlib import Path

import pytest

from app.cli.generators import generate_two_point
from app.core.logging import run_id_var


@pytest.fixture(autouse=True)
def _reset_run_id() -> None:
    """Each invocation sets its own run ID."""
    run_id_var.set("")


@pytest.fixture
def two_point_path(tmp_path: Path) -> str:
    """Problem file for L = σx with the basis states."""
    path = tmp_path / "two_point.json"
    path.write_text(generate_two_point(1.0).model_dump_json(indent=2), encoding="utf-8")
    return str(path)
