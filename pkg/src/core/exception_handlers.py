"""Exception handling for the CLI.

Centralizes all exception handling logic so every command reports
failures in the same JSON shape and with a consistent exit code.
"""

import logging
import sys
from typing import TextIO

from pydantic import ValidationError

from src.core.exceptions import ErrorCode, ExitCode, ScoringError
from src.core.serialization import dumps
from src.schemas.common import ErrorResponse

logger = logging.getLogger(__name__)


def error_response(exc: BaseException) -> tuple[ErrorResponse, int]:
    """Convert an exception into the standardized error response and exit code.

    Args:
        exc: Any exception raised by a command

    Returns:
        Tuple of (ErrorResponse, exit code)
    """
    if isinstance(exc, ScoringError):
        return (
            ErrorResponse(
                data=exc.data or None,
                error_code=exc.error_code,
                error_message=exc.message,
            ),
            exc.exit_code,
        )

    if isinstance(exc, ValidationError):
        errors = [
            {
                "field": ".".join(str(loc) for loc in error["loc"]),
                "message": error["msg"],
                "type": error["type"],
            }
            for error in exc.errors()
        ]
        return (
            ErrorResponse(
                data={"validation_errors": errors},
                error_code=ErrorCode.VALIDATION_ERROR,
                error_message="Configuration validation failed",
            ),
            ExitCode.USAGE_ERROR,
        )

    logger.exception(f"Unhandled exception: {exc}")
    return (
        ErrorResponse(
            data=None,
            error_code=ErrorCode.INTERNAL_ERROR,
            error_message="An unexpected error occurred",
        ),
        ExitCode.VERDICT_FAILED,
    )


def handle_cli_error(exc: BaseException, stream: TextIO | None = None) -> int:
    """Print the error JSON for `exc` and return the process exit code.

    Args:
        exc: Exception raised by a command
        stream: Where to print the JSON (stdout by default)

    Returns:
        Exit code for the process
    """
    response, code = error_response(exc)
    if code == ExitCode.USAGE_ERROR:
        logger.warning(f"{response.error_code}: {response.error_message}")
    print(dumps(response), file=stream or sys.stdout)
    return code
