"""Logging setup for the CLI."""

import logging
import sys

from src.core.config import settings

_configured = False


def setup_logging(level: str | None = None) -> None:
    """Configure the root logger once.

    Records go to stderr so stdout stays reserved for JSON verdicts and CSV.
    """
    global _configured
    root = logging.getLogger()
    root.setLevel(level or settings.LOG_LEVEL)
    if _configured:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(settings.LOG_FORMAT))
    root.addHandler(handler)
    _configured = True
