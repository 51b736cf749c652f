"""
Pydantic schemas.

Run configuration specs and the verifier reports the CLI prints.
"""

from src.schemas.common import BaseSchema, ErrorResponse
from src.schemas.config import AggregationSpec, CredalSetSpec, DecisionProblemSpec, RuleSpec, RunConfig, ThetaSpec
from src.schemas.reports import (
    AxiomReport,
    DictatorReport,
    ImpossibilityReport,
    ImpossibilitySummary,
    ManipulationReport,
    PairViolation,
    ProfileViolation,
    PropernessReport,
    StrictnessReport,
)

__all__ = [
    "BaseSchema",
    "ErrorResponse",
    "CredalSetSpec",
    "RuleSpec",
    "AggregationSpec",
    "DecisionProblemSpec",
    "ThetaSpec",
    "RunConfig",
    "PairViolation",
    "StrictnessReport",
    "ProfileViolation",
    "AxiomReport",
    "DictatorReport",
    "ManipulationReport",
    "PropernessReport",
    "ImpossibilityReport",
    "ImpossibilitySummary",
]
