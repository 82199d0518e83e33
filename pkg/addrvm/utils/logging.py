"""
Structured logging configuration for the toolchain.

Provides JSON and text logging formats with contextual information including:
- The CLI command being executed and its session file
- Service information

Logs always go to stderr so that verdicts and traces printed on stdout stay
byte-stable.
"""

import logging
import sys
from typing import Any, Optional

import structlog
from structlog.typing import EventDict, Processor

from ..config import Settings, get_settings


def add_service_context(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """
    Add service-level context to all log entries.

    Args:
        logger: The logger instance
        method_name: The name of the method being called
        event_dict: The event dictionary

    Returns:
        EventDict: Updated event dictionary with service context
    """
    event_dict["service"] = "addrvm"
    return event_dict


def setup_logging(settings: Optional[Settings] = None) -> structlog.BoundLogger:
    """
    Configure structured logging for the toolchain.

    Args:
        settings: Settings to read level and format from (defaults to the global ones)

    Returns:
        structlog.BoundLogger: Configured logger instance
    """
    settings = settings or get_settings()
    level = logging.getLevelName(settings.log_level)

    shared_processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.ExtraAdder(),
        add_service_context,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
    ]

    if settings.log_format == "json":
        processors = shared_processors + [
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(),
        ]
    else:
        processors = shared_processors + [
            structlog.processors.format_exc_info,
            structlog.dev.ConsoleRenderer(colors=False),
        ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=level,
        force=True,
    )

    return structlog.get_logger("addrvm")


def get_logger(name: Optional[str] = None) -> structlog.BoundLogger:
    """
    Get a logger instance with optional name.

    Args:
        name: Optional logger name (typically __name__)

    Returns:
        structlog.BoundLogger: Logger instance
    """
    if name:
        return structlog.get_logger(name)
    return structlog.get_logger()


def bind_command_context(command: str, **kwargs: Any) -> None:
    """
    Bind command context to the logger for correlation.

    Args:
        command: Name of the CLI command being executed
        **kwargs: Additional context to bind (session file, mode, ...)
    """
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command, **kwargs)


def unbind_command_context() -> None:
    """Clear command context so it does not bleed into the next command."""
    structlog.contextvars.clear_contextvars()
