"""Harness tasks behind the CLI commands."""
