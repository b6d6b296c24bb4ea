"""structlog configuration shared by the CLI and the test-suite."""
import logging
import sys

import structlog

from .settings import settings


def configure_logging(level: str | None = None, fmt: str | None = None) -> None:
    """Configure structlog once for the process.

    Args:
        level: Log level name; defaults to ``settings.log_level``
        fmt: ``json`` or ``console``; defaults to ``settings.log_format``
    """
    level_name = (level or settings.log_level).upper()
    numeric_level = getattr(logging, level_name, logging.INFO)
    fmt = fmt or settings.log_format

    renderer = (
        structlog.processors.JSONRenderer()
        if fmt == "json"
        else structlog.dev.ConsoleRenderer()
    )

    structlog.configure(
        processors=[
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
