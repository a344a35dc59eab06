"""Command-line entry point.

This module builds the ``spectral-distance`` command with:
- Subcommands ``distance``, ``check``, ``w1`` and ``gen``
- Structured logging to stderr with a per-invocation run ID
- A single error handler mapping package errors to exit code 1

Exit codes: 0 success, 1 error, 2 infinite distance, 3 iteration cap reached.
"""

import argparse
from collections.abc import Sequence
from typing import NoReturn

from app.cli.commands import cmd_check, cmd_distance, cmd_gen, cmd_w1
from app.cli.models import GenParams
from app.core.config import get_settings
from app.core.exceptions import ArgumentError, SpectralDistanceError, handle_cli_error
from app.core.logging import get_logger, set_run_id, setup_logging
from app.shared.triple.triple_models import AlgebraMode


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as ``ArgumentError``.

    argparse exits with status 2 by default, which is reserved for infinite distances.
    """

    def error(self, message: str) -> NoReturn:
        raise ArgumentError(f"{self.prog}: {message}")


def _float_list(value: str) -> list[float]:
    try:
        return [float(item) for item in value.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {value!r}") from e


def build_parser() -> argparse.ArgumentParser:
    """Parser for all subcommands."""
    settings = get_settings()
    parser = _Parser(prog="spectral-distance", description=settings.app_name)
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Override the configured log level",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    distance = commands.add_parser("distance", help="Certified distance between the two states")
    distance.add_argument("input", help="Problem file, or - for stdin")
    distance.add_argument("--tol", type=float, default=None, help="Relative gap target")
    distance.add_argument("--max-iter", type=int, default=None, help="Iteration cap")
    distance.add_argument(
        "--anti-hermitian",
        action="store_true",
        default=None,
        help="Search the dual variable among anti-Hermitian one-forms",
    )
    distance.add_argument("--seed", type=int, default=None, help="Power-iteration seed")

    check = commands.add_parser("check", help="Kernel, connectedness and finiteness report")
    check.add_argument("input", help="Problem file, or - for stdin")

    w1 = commands.add_parser("w1", help="Wasserstein-1 distance of two measures on the line")
    w1.add_argument("mu", help="Inline JSON [[position, weight], ...] or a file")
    w1.add_argument("nu", help="Inline JSON [[position, weight], ...] or a file")
    w1.add_argument("--potential", default=None, help="Write the optimal potential to this file")

    gen = commands.add_parser("gen", help="Emit a problem file")
    kinds = gen.add_subparsers(dest="kind", required=True)
    two_point = kinds.add_parser("two-point", help="L = Λσx with the basis states")
    two_point.add_argument("--lambda", dest="lam", type=float, default=1.0)
    line = kinds.add_parser("line", help="Line-graph triple with two classical states")
    line.add_argument("--positions", type=_float_list, required=True)
    line.add_argument("--rho1", dest="weights1", type=_float_list, required=True)
    line.add_argument("--rho2", dest="weights2", type=_float_list, required=True)
    random_kind = kinds.add_parser("random", help="Random triple with two full-rank states")
    random_kind.add_argument("--n", type=int, default=2)
    random_kind.add_argument("--N", dest="N", type=int, default=1)
    random_kind.add_argument("--seed", type=int, default=0)
    random_kind.add_argument(
        "--algebra", choices=[mode.value for mode in AlgebraMode], default=AlgebraMode.FULL.value
    )
    return parser


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "distance":
        return cmd_distance(
            args.input,
            tol=args.tol,
            max_iter=args.max_iter,
            anti_hermitian=args.anti_hermitian,
            seed=args.seed,
        )
    if args.command == "check":
        return cmd_check(args.input)
    if args.command == "w1":
        return cmd_w1(args.mu, args.nu, potential_path=args.potential)
    params = {key: value for key, value in vars(args).items() if key in GenParams.model_fields}
    try:
        gen_params = GenParams.model_validate(params)
    except ValueError as e:
        raise ArgumentError(f"invalid gen parameters: {e}") from e
    return cmd_gen(gen_params)


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` when omitted.

    Returns:
        The process exit code.
    """
    settings = get_settings()
    setup_logging(log_level=settings.log_level)
    set_run_id()
    logger = get_logger(__name__)

    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            setup_logging(log_level=args.log_level)
        logger.info("application.cli.command_started", command=args.command)
        return _dispatch(args)
    except SpectralDistanceError as e:
        return handle_cli_error(e)


if __name__ == "__main__":
    raise SystemExit(main())
