"""Utility modules for the toolchain."""

from .logging import bind_command_context, get_logger, setup_logging, unbind_command_context

__all__ = [
    "setup_logging",
    "get_logger",
    "bind_command_context",
    "unbind_command_context",
]
