"""Credal scoring: tailored and randomized scoring rules for imprecise forecasts."""

__version__ = "0.1.0"
