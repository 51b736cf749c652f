"""Domain models for credal scoring.

This module exports the immutable domain types:
- OutcomeSpace, Distribution, CredalSet, UtilityRange: beliefs and reports
- PreciseScoringRule: classical scoring rules and Gneiting constructions
- DecisionProblem, BestAction, ActionFingerprint: the decision-maker's side
- AggregationRule, UtilityProfile: aggregation over credal-set members
- TailoredRule, ThetaDistribution, ScoreLandscape: imprecise scoring
"""

from .aggregation import AggregationKind, AggregationRule, Aggregator, Relation, UtilityProfile
from .decision import ActionFingerprint, BestAction, DecisionProblem
from .probability import CredalSet, Distribution, OutcomeSpace, UtilityRange
from .scoring import PreciseScoringRule, ScoringKind
from .tailored import ScoreLandscape, TailoredRule, ThetaDistribution, ThetaKind, zero_fallback

__all__ = [
    # Probability
    "OutcomeSpace",
    "Distribution",
    "CredalSet",
    "UtilityRange",
    # Precise scoring
    "PreciseScoringRule",
    "ScoringKind",
    # Decision
    "DecisionProblem",
    "BestAction",
    "ActionFingerprint",
    # Aggregation
    "AggregationKind",
    "AggregationRule",
    "Aggregator",
    "Relation",
    "UtilityProfile",
    # Imprecise scoring
    "TailoredRule",
    "ThetaDistribution",
    "ThetaKind",
    "ScoreLandscape",
    "zero_fallback",
]
