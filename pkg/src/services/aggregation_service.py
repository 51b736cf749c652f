"""Aggregation service.

Applies aggregation rules to expected-utility profiles and checks the
social-choice axioms (Pareto efficiency, independence of irrelevant
alternatives, dictatorship) by enumeration over sampled instances.
"""

import itertools
import logging
from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.config import settings
from src.core.exceptions import ArgumentError
from src.models.aggregation import AggregationKind, AggregationRule, Aggregator, Relation, UtilityProfile
from src.models.decision import DecisionProblem
from src.models.probability import CredalSet, Distribution
from src.schemas.reports import AxiomReport, DictatorReport, ManipulationReport, ProfileViolation
from src.services.decision_service import decision_service, lowest_argmax
from src.services.probability_service import probability_service

logger = logging.getLogger(__name__)

RuleLike = AggregationRule | Aggregator


def describe_rule(rule: RuleLike) -> dict[str, Any]:
    """JSON descriptor of a built-in rule or a custom aggregator."""
    if isinstance(rule, AggregationRule):
        return rule.describe()
    return {"kind": "custom", "name": getattr(rule, "__name__", type(rule).__name__)}


def _order(a: float, b: float, tolerance: float) -> int:
    if abs(a - b) <= tolerance:
        return 0
    return 1 if a > b else -1


class AggregationService:
    """Service for aggregation rules and axiom checks."""

    @staticmethod
    def combine(rule: RuleLike, values: NDArray[np.float64]) -> NDArray[np.float64]:
        """
        Aggregate a raw (k x m) table column-wise.

        A single-member table is returned unchanged for every rule kind.

        Raises:
            ArgumentError: If a fixed_linear lambda does not have one weight per member
        """
        if not isinstance(rule, AggregationRule):
            return np.asarray(rule(values), dtype=np.float64)
        if values.shape[0] == 1:
            return values[0].copy()
        match rule.kind:
            case AggregationKind.UTILITARIAN:
                return values.mean(axis=0)
            case AggregationKind.EGALITARIAN:
                return values.min(axis=0)
            case AggregationKind.FIXED_LINEAR:
                if rule.weights.shape[0] != values.shape[0]:
                    raise ArgumentError(
                        f"lambda has {rule.weights.shape[0]} weights for {values.shape[0]} extreme points",
                        data={"lambda": rule.weights.tolist()},
                    )
                return rule.weights @ values
        raise ArgumentError(f"Unknown aggregation kind {rule.kind!r}")

    @staticmethod
    def aggregate(rule: RuleLike, profile: UtilityProfile) -> NDArray[np.float64]:
        """
        rho applied to a utility profile, one value per input.

        Args:
            rule: Built-in aggregation rule or any callable aggregator
            profile: k x m expected utilities

        Returns:
            Aggregated utility of each of the m inputs
        """
        return AggregationService.combine(rule, profile.values)

    @staticmethod
    def compare(x: ArrayLike, y: ArrayLike, tolerance: float | None = None) -> Relation:
        """
        Dominance relation between two columns of member utilities.

        Infinite entries compare without subtraction, so -inf ties with -inf.
        """
        tol = settings.TIE_TOLERANCE if tolerance is None else tolerance
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        x_over_y = bool(np.all((x >= y - tol) | (x == y)))
        y_over_x = bool(np.all((y >= x - tol) | (x == y)))
        if x_over_y and y_over_x:
            return Relation.INDIFFERENT
        if x_over_y:
            return Relation.PREFERRED
        if y_over_x:
            return Relation.DISPREFERRED
        return Relation.INCOMPARABLE

    @staticmethod
    def partial_order(profile: UtilityProfile) -> dict[tuple[int, int], Relation]:
        """
        The unanimity order a profile induces: x ⪰ y iff every member weakly prefers x.

        Returns:
            Relation of input i to input j for every pair i < j
        """
        values = profile.values
        return {
            (i, j): AggregationService.compare(values[:, i], values[:, j])
            for i, j in itertools.combinations(range(profile.n_inputs), 2)
        }

    @staticmethod
    def report_dominance(belief: CredalSet, scores_a: ArrayLike, scores_b: ArrayLike) -> Relation:
        """
        Compare two reports by the expected score under every extreme point of the belief.

        Args:
            belief: The forecaster's credal set
            scores_a: Per-outcome scores of the first report
            scores_b: Per-outcome scores of the second report
        """
        a = np.array([p.expectation(scores_a) for p in belief.extremes])
        b = np.array([p.expectation(scores_b) for p in belief.extremes])
        return AggregationService.compare(a, b, settings.PROPERNESS_MARGIN)

    @staticmethod
    def sample_profiles(
        rng: np.random.Generator,
        count: int,
        members: int = 2,
        inputs: int = 3,
    ) -> list[UtilityProfile]:
        """Random profiles with entries uniform on [-1, 1)."""
        return [UtilityProfile(rng.uniform(-1.0, 1.0, size=(members, inputs))) for _ in range(count)]

    @staticmethod
    def check_pareto_efficiency(rule: RuleLike, profiles: Iterable[UtilityProfile]) -> AxiomReport:
        """
        Check that the aggregated order keeps every unanimous preference.

        Returns:
            AxiomReport listing each (profile, pair) whose dominance is lost
        """
        tol = settings.TIE_TOLERANCE
        violations: list[ProfileViolation] = []
        checked = 0
        for profile in profiles:
            checked += 1
            aggregated = AggregationService.aggregate(rule, profile)
            for (i, j), relation in AggregationService.partial_order(profile).items():
                order = _order(float(aggregated[i]), float(aggregated[j]), tol)
                lost = (
                    (relation is Relation.PREFERRED and order < 0)
                    or (relation is Relation.DISPREFERRED and order > 0)
                    or (relation is Relation.INDIFFERENT and order != 0)
                )
                if lost:
                    violations.append(
                        ProfileViolation(
                            profile=profile.values.tolist(),
                            pair=(i, j),
                            detail=(
                                f"unanimous {relation.value} but aggregated values "
                                f"{aggregated[i]:.6g}, {aggregated[j]:.6g}"
                            ),
                        )
                    )
        if checked < 1:
            raise ArgumentError("Pareto check needs at least one profile")
        logger.debug(f"Pareto check of {describe_rule(rule)}: {len(violations)} violations in {checked} profiles")
        return AxiomReport(axiom="pareto_efficiency", rule=describe_rule(rule), checked=checked, violations=violations)

    @staticmethod
    def check_iia(rule: RuleLike, profiles: Iterable[UtilityProfile]) -> AxiomReport:
        """
        Check that deleting a third input never flips the aggregated order of a pair.

        Raises:
            ArgumentError: If a profile has fewer than three inputs
        """
        tol = settings.TIE_TOLERANCE
        violations: list[ProfileViolation] = []
        checked = 0
        for profile in profiles:
            if profile.n_inputs < 3:
                raise ArgumentError("IIA checks need profiles with at least three inputs")
            checked += 1
            full = AggregationService.aggregate(rule, profile)
            for z in range(profile.n_inputs):
                reduced = AggregationService.aggregate(rule, profile.without_input(z))
                kept = [i for i in range(profile.n_inputs) if i != z]
                for (ri, x), (rj, y) in itertools.combinations(enumerate(kept), 2):
                    before = _order(float(full[x]), float(full[y]), tol)
                    after = _order(float(reduced[ri]), float(reduced[rj]), tol)
                    if before != after:
                        violations.append(
                            ProfileViolation(
                                profile=profile.values.tolist(),
                                pair=(x, y),
                                detail=f"order {before:+d} becomes {after:+d} without input {z}",
                            )
                        )
        logger.debug(f"IIA check of {describe_rule(rule)}: {len(violations)} flips in {checked} profiles")
        return AxiomReport(axiom="iia", rule=describe_rule(rule), checked=checked, violations=violations)

    @staticmethod
    def random_problems(
        rng: np.random.Generator,
        count: int,
        n_outcomes: int,
        n_actions: int = 5,
    ) -> list[DecisionProblem]:
        """Decision problems with utilities uniform on [0, 1)."""
        return [
            DecisionProblem.from_table(rng.uniform(0.0, 1.0, size=(n_actions, n_outcomes)), name=f"random-{i}")
            for i in range(count)
        ]

    @staticmethod
    def search_dictator(
        rule: RuleLike,
        problem: DecisionProblem,
        credal: CredalSet,
        mixture_step: float | None = None,
        random_problems: int = 50,
        seed: int | None = None,
        extra_problems: Sequence[DecisionProblem] = (),
    ) -> DictatorReport:
        """
        Grid search for a precise member of co(credal) that dictates the rule's choices.

        A candidate mixture qualifies when its best action matches the best action
        under the aggregated utilities for the given problem, every extra problem and
        `random_problems` seeded random utility tables. Among qualifying candidates the
        one whose expected utilities are closest to the aggregated ones is returned.
        """
        step = settings.DEFAULT_MIXTURE_STEP if mixture_step is None else mixture_step
        extremes = list(credal.extremes)
        if len(extremes) == 1:
            return DictatorReport(
                found=True,
                dictator=extremes[0].probs.tolist(),
                weights=[1.0],
                problems_checked=0,
                mixture_step=step,
            )

        rng = np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed)
        problems = [
            problem,
            *extra_problems,
            *AggregationService.random_problems(rng, random_problems, credal.space.size),
        ]
        matrix = credal.extreme_matrix()
        candidates = probability_service.simplex_grid(len(extremes), step)
        mixtures = candidates @ matrix

        agreeing = np.ones(candidates.shape[0], dtype=bool)
        gap = np.zeros(candidates.shape[0])
        for p in problems:
            aggregated = AggregationService.combine(rule, decision_service.expected_utilities(p, matrix))
            target, _ = lowest_argmax(aggregated)
            candidate_values = decision_service.expected_utilities(p, mixtures)
            chosen, _ = lowest_argmax(candidate_values)
            agreeing &= chosen == target[0]
            gap = np.maximum(gap, np.max(np.abs(candidate_values - aggregated[None, :]), axis=1))

        if not agreeing.any():
            logger.debug(f"No dictator for {describe_rule(rule)} at mixture step {step}")
            return DictatorReport(found=False, problems_checked=len(problems), mixture_step=step)

        best = int(np.flatnonzero(agreeing)[np.argmin(gap[agreeing])])
        dictator = probability_service.mixture(candidates[best], extremes)
        return DictatorReport(
            found=True,
            dictator=dictator.probs.tolist(),
            weights=candidates[best].tolist(),
            problems_checked=len(problems),
            mixture_step=step,
        )

    @staticmethod
    def find_dictator(
        rule: RuleLike,
        problem: DecisionProblem,
        credal: CredalSet,
        mixture_step: float | None = None,
        random_problems: int = 50,
        seed: int | None = None,
        extra_problems: Sequence[DecisionProblem] = (),
    ) -> Distribution | None:
        """
        Dictator of the rule inside co(credal), or None if none is found at grid resolution.

        None means "not found at this resolution", never "no dictator exists".
        """
        report = AggregationService.search_dictator(
            rule, problem, credal, mixture_step, random_problems, seed, extra_problems
        )
        if not report.found:
            return None
        return Distribution(np.asarray(report.dictator), credal.space)

    @staticmethod
    def dictator_manipulation(
        rule: AggregationRule,
        problem: DecisionProblem,
        belief: CredalSet,
        k: float = 1.0,
        c: float = 0.0,
    ) -> ManipulationReport:
        """
        Forecaster value of the truthful report against the precise dictator report.

        Under a dictatorship both values coincide, so lying costs nothing.
        """
        from src.models.tailored import TailoredRule
        from src.services.ip_scoring_service import ip_scoring_service

        tailored = TailoredRule(problem, rule, k, c)
        truthful = ip_scoring_service.forecaster_value(tailored, belief, belief)
        dictator = AggregationService.find_dictator(rule, problem, belief)
        if dictator is None:
            return ManipulationReport(dictator=None, truthful_value=truthful, dictator_value=None)
        lie = ip_scoring_service.forecaster_value(tailored, belief, CredalSet.singleton(dictator))
        return ManipulationReport(dictator=dictator.probs.tolist(), truthful_value=truthful, dictator_value=lie)


# Global instance
aggregation_service = AggregationService()
