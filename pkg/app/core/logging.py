"""structlog JSON logging for the CLI.

One JSON object per line on stderr; stdout carries only the documents the
commands print. Every line of an invocation shares its ``run_id``. Event
names are dotted ``domain.component.action_state``, for instance
``application.cli.command_started``, ``solver.distance.solve_completed`` and
``cli.command.failed``.
"""

import logging
import sys
import uuid
from contextvars import ContextVar
from typing import TextIO

import structlog
from structlog.typing import EventDict, WrappedLogger

# Context variable for run correlation ID
run_id_var: ContextVar[str] = ContextVar("run_id", default="")


def get_run_id() -> str:
    """Current run ID, empty before ``set_run_id``."""
    return run_id_var.get()


def set_run_id(run_id: str | None = None) -> str:
    """Set run ID in context, generating one if not provided.

    Args:
        run_id: Optional run ID to set. If None, generates a new UUID.

    Returns:
        The run ID that was set.
    """
    if not run_id:
        run_id = str(uuid.uuid4())
    run_id_var.set(run_id)
    return run_id


def add_run_id(_logger: WrappedLogger, _method_name: str, event_dict: EventDict) -> EventDict:
    """Processor stamping the current run ID onto every event."""
    run_id = get_run_id()
    if run_id:
        event_dict["run_id"] = run_id
    return event_dict


def setup_logging(log_level: str = "INFO", stream: TextIO | None = None) -> None:
    """Route structlog through the JSON processor chain at ``log_level``.

    Args:
        log_level: The logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
        stream: Destination for log lines. Defaults to stderr so that stdout
            stays reserved for JSON documents emitted by the CLI.
    """
    # logging.getLevelName(str) is deprecated in Python 3.12+
    level_int = getattr(logging, log_level.upper())

    structlog.configure(
        processors=[
            add_run_id,
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level_int),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=stream or sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str) -> WrappedLogger:
    """Module logger; ``name`` is usually ``__name__``."""
    return structlog.get_logger(name)
