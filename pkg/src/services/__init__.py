"""
Domain services.

One service per concern, each with a module-level instance.
"""

from src.services.aggregation_service import AggregationService, aggregation_service
from src.services.decision_service import DecisionService, decision_service
from src.services.ip_scoring_service import IPScoringService, ip_scoring_service
from src.services.precise_scoring_service import PreciseScoringService, precise_scoring_service
from src.services.probability_service import ProbabilityService, probability_service

__all__ = [
    "ProbabilityService",
    "probability_service",
    "PreciseScoringService",
    "precise_scoring_service",
    "DecisionService",
    "decision_service",
    "AggregationService",
    "aggregation_service",
    "IPScoringService",
    "ip_scoring_service",
]
