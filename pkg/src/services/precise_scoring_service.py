"""Precise scoring service.

Scores, expected scores and numerical strict-properness checks for
precise scoring rules, including rules built from a convex potential G.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray

from src.core.config import settings
from src.core.exceptions import ArgumentError
from src.models.probability import Distribution, OutcomeSpace
from src.models.scoring import PreciseScoringRule, ScoringKind
from src.schemas.reports import PairViolation, StrictnessReport
from src.services.probability_service import probability_service

logger = logging.getLogger(__name__)


class PreciseScoringService:
    """Service for precise scoring rules."""

    @staticmethod
    def score(rule: PreciseScoringRule, report: Distribution, outcome: int) -> float:
        """
        Score s(q, o) of a precise report.

        Returns -inf for a logarithmic score of an outcome the report rules out.

        Raises:
            ArgumentError: If the outcome index or the offsets do not fit the space
        """
        n = report.size
        if not 0 <= outcome < n:
            raise ArgumentError(f"Outcome index {outcome} outside 0..{n - 1}")
        if rule.offsets is not None and rule.offsets.shape[0] != n:
            raise ArgumentError(f"{rule.offsets.shape[0]} offsets for {n} outcomes")

        q = report.probs
        match rule.kind:
            case ScoringKind.LOGARITHMIC:
                if q[outcome] <= 0.0:
                    return -math.inf
                return rule.offset(outcome) + rule.scale * math.log(q[outcome])
            case ScoringKind.QUADRATIC | ScoringKind.BRIER:
                return rule.offset(outcome) + rule.scale * (2.0 * q[outcome] - float(np.dot(q, q)))
            case ScoringKind.GNEITING:
                gradient = np.asarray(rule.subgradient(q), dtype=np.float64)
                if not np.isfinite(gradient[outcome]):
                    return float(gradient[outcome])
                support = q > 0
                return float(rule.potential(q) - np.dot(gradient[support], q[support]) + gradient[outcome])
            case ScoringKind.CONSTANT:
                return rule.constant
        raise ArgumentError(f"Unknown scoring rule kind {rule.kind!r}")

    @staticmethod
    def score_vector(rule: PreciseScoringRule, report: Distribution) -> NDArray[np.float64]:
        """Scores of a report for every outcome."""
        return np.array([PreciseScoringService.score(rule, report, o) for o in range(report.size)])

    @staticmethod
    def expected_score(rule: PreciseScoringRule, report: Distribution, belief: Distribution) -> float:
        """
        E_{o ~ belief}[s(report, o)] with 0 * (-inf) = 0.

        Raises:
            ArgumentError: If report and belief live on different spaces
        """
        if report.space != belief.space:
            raise ArgumentError("Report and belief live on different outcome spaces")
        total = 0.0
        for o in range(belief.size):
            if belief.probs[o] > 0:
                total += belief.probs[o] * PreciseScoringService.score(rule, report, o)
        return total

    @staticmethod
    def sample_distinct_pair(
        rng: np.random.Generator,
        space: OutcomeSpace,
    ) -> tuple[Distribution, Distribution]:
        """Two Dirichlet(1) draws at L-infinity distance above the configured gap."""
        while True:
            p = probability_service.sample_distribution(rng, space)
            q = probability_service.sample_distribution(rng, space)
            if p.distance(q) > settings.DISTINCT_PAIR_DISTANCE:
                return p, q

    @staticmethod
    def verify_strict_properness(
        rule: PreciseScoringRule,
        trials: int,
        rng_seed: int,
        outcome_sizes: Sequence[int] = (2,),
        max_reported: int | None = None,
    ) -> StrictnessReport:
        """
        Sample (p, q) pairs and flag those where truthful reporting is not strictly better.

        A pair violates strictness when E_p[s(p)] <= E_p[s(q)] + margin. Trial i
        draws from an outcome space of size outcome_sizes[i % len(outcome_sizes)].
        """
        if trials < 1:
            raise ArgumentError("At least one trial is required")
        rng = np.random.default_rng(rng_seed)
        spaces = [OutcomeSpace.of_size(n) for n in outcome_sizes]
        margin = settings.STRICTNESS_MARGIN

        violations: list[PairViolation] = []
        for i in range(trials):
            p, q = PreciseScoringService.sample_distinct_pair(rng, spaces[i % len(spaces)])
            truthful = PreciseScoringService.expected_score(rule, p, p)
            misreport = PreciseScoringService.expected_score(rule, q, p)
            if truthful <= misreport + margin and (max_reported is None or len(violations) < max_reported):
                violations.append(
                    PairViolation(
                        belief=p.probs.tolist(),
                        report=q.probs.tolist(),
                        truthful_value=truthful,
                        misreport_value=misreport,
                    )
                )

        logger.debug(f"{rule.name}: {len(violations)} strictness violations in {trials} trials")
        return StrictnessReport(rule=rule.name, trials=trials, seed=rng_seed, violations=violations)

    @staticmethod
    def expected_score_is_G(
        rule: PreciseScoringRule,
        samples: int,
        rng_seed: int = 0,
        n_outcomes: int = 3,
    ) -> float:
        """
        Max |E_q[s(q, o)] - G(q)| over sampled q for a Gneiting-constructed rule.

        Raises:
            ArgumentError: If the rule has no potential G
        """
        if rule.kind is not ScoringKind.GNEITING or rule.potential is None:
            raise ArgumentError("Only Gneiting-constructed rules carry a potential G")
        rng = np.random.default_rng(rng_seed)
        space = OutcomeSpace.of_size(n_outcomes)
        deviation = 0.0
        for _ in range(samples):
            q = probability_service.sample_distribution(rng, space)
            gap = abs(PreciseScoringService.expected_score(rule, q, q) - rule.potential(q.probs))
            deviation = max(deviation, gap)
        return deviation


# Global instance
precise_scoring_service = PreciseScoringService()
