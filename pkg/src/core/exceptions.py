"""Custom exceptions for the credal scoring toolkit.

Defines custom exception classes with standardized error codes
and process exit codes for consistent error handling across the CLI.
"""

from typing import Any


class ErrorCode:
    """Standard error codes for CLI responses."""

    # Usage errors (exit 2)
    VALIDATION_ERROR = "VALIDATION_ERROR"
    ARGUMENT_ERROR = "ARGUMENT_ERROR"
    CONFIGURATION_ERROR = "CONFIGURATION_ERROR"
    GRID_ERROR = "GRID_ERROR"

    # Verdict and runtime errors (exit 1)
    OUTPUT_ERROR = "OUTPUT_ERROR"
    INTERNAL_ERROR = "INTERNAL_ERROR"


class ExitCode:
    """Process exit codes."""

    SUCCESS = 0
    VERDICT_FAILED = 1
    USAGE_ERROR = 2


class ScoringError(Exception):
    """Base exception for all toolkit errors."""

    def __init__(
        self,
        message: str,
        error_code: str = ErrorCode.INTERNAL_ERROR,
        exit_code: int = ExitCode.VERDICT_FAILED,
        data: dict[str, Any] | None = None,
    ):
        """Initialize toolkit error.

        Args:
            message: Human-readable error message
            error_code: Machine-readable error code
            exit_code: Process exit code reported by the CLI
            data: Additional error data
        """
        self.message = message
        self.error_code = error_code
        self.exit_code = exit_code
        self.data = data or {}
        super().__init__(self.message)


class ArgumentError(ScoringError, ValueError):
    """Exception raised for dimension, length or outcome-space mismatches."""

    def __init__(self, message: str = "Invalid argument", data: dict[str, Any] | None = None):
        """Initialize argument error."""
        super().__init__(
            message=message,
            error_code=ErrorCode.ARGUMENT_ERROR,
            exit_code=ExitCode.USAGE_ERROR,
            data=data,
        )


class ConfigurationError(ScoringError):
    """Exception raised for invalid run configurations or flags."""

    def __init__(self, message: str = "Invalid configuration", data: dict[str, Any] | None = None):
        """Initialize configuration error."""
        super().__init__(
            message=message,
            error_code=ErrorCode.CONFIGURATION_ERROR,
            exit_code=ExitCode.USAGE_ERROR,
            data=data,
        )


class GridError(ScoringError, ValueError):
    """Exception raised for malformed report grids and lattices."""

    def __init__(self, message: str = "Invalid report grid", data: dict[str, Any] | None = None):
        """Initialize grid error."""
        super().__init__(
            message=message,
            error_code=ErrorCode.GRID_ERROR,
            exit_code=ExitCode.USAGE_ERROR,
            data=data,
        )


class OutputError(ScoringError):
    """Exception raised when a result file cannot be written."""

    def __init__(self, message: str = "Cannot write output", data: dict[str, Any] | None = None):
        """Initialize output error."""
        super().__init__(
            message=message,
            error_code=ErrorCode.OUTPUT_ERROR,
            exit_code=ExitCode.VERDICT_FAILED,
            data=data,
        )
