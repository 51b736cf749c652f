"""Imprecise-probability scoring service.

Tailored and randomized tailored scores, the forecaster's expected value V
of a report, brute-force properness verification over report grids, and the
enumerative impossibility and non-strictness checks.
"""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.config import settings
from src.core.exceptions import ArgumentError, GridError
from src.models.aggregation import AggregationRule, Relation
from src.models.decision import BestAction, DecisionProblem
from src.models.probability import CredalSet, Distribution, OutcomeSpace
from src.models.scoring import PreciseScoringRule
from src.models.tailored import ScoreLandscape, TailoredRule, ThetaDistribution, ThetaKind
from src.schemas.reports import ImpossibilityReport, ImpossibilitySummary, PropernessReport, ReportDescriptor
from src.services.aggregation_service import aggregation_service
from src.services.decision_service import decision_service, lowest_argmax
from src.services.precise_scoring_service import precise_scoring_service
from src.services.probability_service import probability_service

logger = logging.getLogger(__name__)

# V(belief, report)
Valuer = Callable[[CredalSet, CredalSet], float]


def _check_spaces(belief: CredalSet, report: CredalSet) -> None:
    if belief.space != report.space:
        raise ArgumentError("Belief and report live on different outcome spaces")


def _node_mixtures(nodes: NDArray[np.float64], members: NDArray[np.float64]) -> NDArray[np.float64]:
    """Per-node lambda-weighted rows of `members`, identity for a single member."""
    if members.shape[0] == 1:
        return np.repeat(members, nodes.shape[0], axis=0)
    if nodes.shape[1] != members.shape[0]:
        raise ArgumentError(f"theta lambda vectors have {nodes.shape[1]} weights for {members.shape[0]} extreme points")
    return nodes @ members


class IPScoringService:
    """Service for scoring imprecise forecasts."""

    @staticmethod
    def optimal_action(problem: DecisionProblem, rule: AggregationRule, report: CredalSet) -> BestAction:
        """
        a*_{Q, rho}: the action maximizing the aggregated expected utility of the report.

        Ties go to the lowest action index.
        """
        profile = decision_service.expected_utilities(problem, report.extreme_matrix())
        aggregated = aggregation_service.combine(rule, profile)
        index, unique = lowest_argmax(aggregated)
        i = int(index[0])
        return BestAction(
            index=i,
            value=float(aggregated[i]),
            unique=bool(unique[0]),
            label=problem.action_label(i),
            action_value=problem.action_value(i),
        )

    @staticmethod
    def score_vector(rule: TailoredRule, report: CredalSet) -> NDArray[np.float64]:
        """s_rho(Q, o) for every outcome."""
        action = IPScoringService.optimal_action(rule.problem, rule.rule, report)
        return rule.k * rule.problem.utility[action.index] + rule.c

    @staticmethod
    def tailored_score(rule: TailoredRule, report: CredalSet, outcome: int) -> float:
        """
        s_rho(Q, o) = k * u(a*_{Q, rho}, o) + c.

        Raises:
            ArgumentError: If the outcome index is outside the problem's outcomes
        """
        if not 0 <= outcome < rule.problem.n_outcomes:
            raise ArgumentError(f"Outcome index {outcome} outside 0..{rule.problem.n_outcomes - 1}")
        return float(IPScoringService.score_vector(rule, report)[outcome])

    @staticmethod
    def forecaster_value(rule: TailoredRule, belief: CredalSet, report: CredalSet) -> float:
        """
        V^P_rho(Q): expected tailored scores under each extreme point of the belief,
        aggregated by the same rule rho.
        """
        _check_spaces(belief, report)
        scores = IPScoringService.score_vector(rule, report)
        expected = np.array([[p.expectation(scores) for p in belief.extremes]]).T
        return float(aggregation_service.combine(rule.rule, expected)[0])

    @staticmethod
    def randomized_score(
        theta: ThetaDistribution,
        base: TailoredRule,
        report: CredalSet,
        outcome: int,
        weights: ArrayLike,
    ) -> float:
        """
        s_theta(Q, o) for the realized lambda `weights`.

        Inside theta's support this is the tailored score under fixed_linear(lambda);
        outside it the fallback score Pi(Q, o) applies.
        """
        lam = np.asarray(weights, dtype=np.float64)
        if theta.kind is ThetaKind.UNIFORM:
            in_support = lam.shape == (2,) and theta.lower <= lam[0] <= theta.upper
        else:
            in_support = theta.density_at(lam) > 0
        if not in_support:
            return float(theta.fallback(report, outcome))
        return IPScoringService.tailored_score(base.with_rule(AggregationRule.fixed_linear(lam)), report, outcome)

    @staticmethod
    def randomized_node_scores(theta: ThetaDistribution, base: TailoredRule, report: CredalSet) -> NDArray[np.float64]:
        """Tailored scores s_lambda(Q, o) at every lambda node of theta (nodes x outcomes)."""
        problem = base.problem
        report_profile = report.extreme_matrix() @ problem.utility.T
        actions, _ = lowest_argmax(_node_mixtures(theta.nodes, report_profile))
        return base.k * problem.utility[actions] + base.c

    @staticmethod
    def expected_randomized_score(
        theta: ThetaDistribution,
        base: TailoredRule,
        report: CredalSet,
    ) -> NDArray[np.float64]:
        """E_{lambda ~ theta}[s_lambda(Q, o)] for every outcome."""
        return theta.weights @ IPScoringService.randomized_node_scores(theta, base, report)

    @staticmethod
    def randomized_node_values(
        theta: ThetaDistribution,
        base: TailoredRule,
        belief: CredalSet,
        report: CredalSet,
    ) -> NDArray[np.float64]:
        """V^P_lambda(Q) at every lambda node of theta, computed in one pass."""
        _check_spaces(belief, report)
        scores = IPScoringService.randomized_node_scores(theta, base, report)
        beliefs = _node_mixtures(theta.nodes, belief.extreme_matrix())
        return np.sum(beliefs * scores, axis=1)

    @staticmethod
    def randomized_value(
        theta: ThetaDistribution,
        base: TailoredRule,
        belief: CredalSet,
        report: CredalSet,
    ) -> float:
        """
        V^P_theta(Q) = E_{rho ~ theta}[V^P_rho(Q)].

        A discrete theta is a weighted sum over its support; a uniform theta is
        integrated with its trapezoid nodes. Only nodes with positive weight
        enter, so the fallback score never contributes.
        """
        values = IPScoringService.randomized_node_values(theta, base, belief, report)
        return float(theta.weights @ values)

    @staticmethod
    def truncate(theta: ThetaDistribution, lower: float, upper: float) -> ThetaDistribution:
        """Restrict a uniform theta to lambda in [lower, upper]."""
        truncated = theta.truncated(lower, upper)
        logger.debug(f"theta truncated to [{lower}, {upper}], full support {truncated.full_support}")
        return truncated

    @staticmethod
    def deterministic_valuer(rule: TailoredRule) -> Valuer:
        return partial(IPScoringService.forecaster_value, rule)

    @staticmethod
    def randomized_valuer(theta: ThetaDistribution, base: TailoredRule) -> Valuer:
        return partial(IPScoringService.randomized_value, theta, base)

    @staticmethod
    def interval_report_grid(step: float | None = None, space: OutcomeSpace | None = None) -> list[CredalSet]:
        """
        Binary interval reports [q1, q2] with q1 <= q2 on a step grid.

        Row-major with q1 outer; (1/h + 1)(1/h + 2)/2 reports for step h.

        Raises:
            GridError: If the step does not divide 1
        """
        h = settings.DEFAULT_GRID_STEP if step is None else step
        parts = int(round(1.0 / h)) if h > 0 else 0
        if parts < 1 or abs(parts * h - 1.0) > 1e-9:
            raise GridError("Report grid step must divide 1", data={"step": h})
        space = space or OutcomeSpace.binary()
        points = np.round(np.arange(parts + 1) / parts, 12)
        return [CredalSet.interval(float(q1), float(q2), space) for i, q1 in enumerate(points) for q2 in points[i:]]

    @staticmethod
    def describe_report(report: CredalSet) -> ReportDescriptor:
        """[q1, q2] for binary reports, the extreme-point vectors otherwise."""
        if report.space.size == 2:
            q1, q2 = report.bounds()
            return [round(q1, 12), round(q2, 12)]
        return [e.probs.tolist() for e in report.extremes]

    @staticmethod
    def build_landscape(
        valuer: Valuer,
        belief: CredalSet,
        reports: Sequence[CredalSet],
        metadata: dict[str, Any] | None = None,
        workers: int | None = None,
    ) -> ScoreLandscape:
        """
        Evaluate V on every report of a grid.

        With more than one worker, cells are evaluated concurrently; rows keep
        the grid order either way.
        """
        n_workers = settings.WORKERS if workers is None else workers
        evaluate = partial(valuer, belief)
        if n_workers > 1:
            with ThreadPoolExecutor(max_workers=n_workers) as pool:
                values = list(pool.map(evaluate, reports))
        else:
            values = [evaluate(r) for r in reports]

        descriptors = tuple(tuple(IPScoringService.describe_report(r)) for r in reports)
        logger.debug(f"Landscape of {len(reports)} reports evaluated with {n_workers} worker(s)")
        return ScoreLandscape(descriptors, np.array(values), dict(metadata or {}))

    @staticmethod
    def judge_landscape(landscape: ScoreLandscape, belief: CredalSet, reports: Sequence[CredalSet]) -> PropernessReport:
        """
        Properness verdict from an evaluated landscape.

        Raises:
            GridError: If no report of the grid is equivalent to the belief
        """
        truthful = next(
            (i for i, r in enumerate(reports) if probability_service.credal_equivalent(belief, r)),
            None,
        )
        if truthful is None:
            raise GridError(
                "Report grid does not contain a report equivalent to the belief",
                data={"belief": IPScoringService.describe_report(belief)},
            )

        margin = settings.PROPERNESS_MARGIN
        values = landscape.values
        truthful_value = float(values[truthful])
        max_value = landscape.max_value
        beating = np.flatnonzero(values > truthful_value + margin)
        tied = np.flatnonzero(values >= max_value - margin)

        is_proper = beating.size == 0
        is_strict = is_proper and all(probability_service.credal_equivalent(belief, reports[i]) for i in tied)
        return PropernessReport(
            is_proper=is_proper,
            is_strict=is_strict,
            max_value=max_value,
            truthful_value=truthful_value,
            argmax=[IPScoringService.describe_report(reports[i]) for i in tied],
            violations=[IPScoringService.describe_report(reports[i]) for i in beating],
            n_reports=len(reports),
        )

    @staticmethod
    def verify_properness(
        valuer: Valuer,
        belief: CredalSet,
        reports: Sequence[CredalSet],
        workers: int | None = None,
    ) -> PropernessReport:
        """
        Evaluate V over the report grid and decide (strict) properness.

        Args:
            valuer: Deterministic or randomized forecaster value
            belief: The forecaster's credal set
            reports: Report grid, which must contain a report equivalent to the belief
            workers: Worker threads for the grid evaluation

        Returns:
            PropernessReport; proper iff no report beats the truthful one by more than
            the margin, strict iff every report within the margin of the max is
            equivalent to the belief

        Raises:
            GridError: If the grid misses the truthful report
        """
        landscape = IPScoringService.build_landscape(valuer, belief, reports, workers=workers)
        report = IPScoringService.judge_landscape(landscape, belief, reports)
        logger.debug(
            f"Properness over {len(reports)} reports: proper={report.is_proper} strict={report.is_strict} "
            f"argmax size {len(report.argmax)}"
        )
        return report

    @staticmethod
    def non_strictness_witness(
        problem: DecisionProblem,
        rule: AggregationRule,
        belief: CredalSet,
        step: float | None = None,
        k: float = 1.0,
        c: float = 0.0,
    ) -> CredalSet | None:
        """
        A report strictly inside the belief that the forecaster values as much as the truth.

        Candidates are searched narrowest first, so precise reports are tried before
        imprecise ones. Binary beliefs use the interval grid; larger outcome spaces use
        precise mixtures of the belief's extreme points.

        Returns:
            The first witness, or None at this resolution or for a precise belief
        """
        if len(belief.extremes) < 2:
            logger.debug("Non-strictness witness needs a belief with at least two extreme points")
            return None
        h = settings.DEFAULT_GRID_STEP if step is None else step
        if belief.space.size == 2:
            lower, upper = belief.bounds()
            candidates = [
                r
                for r in IPScoringService.interval_report_grid(h, belief.space)
                if r.bounds()[0] >= lower - 1e-12 and r.bounds()[1] <= upper + 1e-12
            ]
            candidates.sort(key=lambda r: r.bounds()[1] - r.bounds()[0])
        else:
            weights = probability_service.simplex_grid(len(belief.extremes), h)
            candidates = [CredalSet.singleton(probability_service.mixture(w, belief.extremes)) for w in weights]

        tailored = TailoredRule(problem, rule, k, c)
        truthful = IPScoringService.forecaster_value(tailored, belief, belief)
        for report in candidates:
            if probability_service.credal_equivalent(belief, report):
                continue
            value = IPScoringService.forecaster_value(tailored, belief, report)
            if abs(value - truthful) <= settings.PROPERNESS_MARGIN:
                return report
        return None

    @staticmethod
    def default_lattice(space: OutcomeSpace | None = None) -> list[CredalSet]:
        """{0}, {0.5}, {1}, [0, 0.5] and the vacuous [0, 1] on a binary space."""
        space = space or OutcomeSpace.binary()
        return [
            CredalSet.interval(0.0, 0.0, space),
            CredalSet.interval(0.5, 0.5, space),
            CredalSet.interval(1.0, 1.0, space),
            CredalSet.interval(0.0, 0.5, space),
            CredalSet.vacuous(space),
        ]

    @staticmethod
    def validate_lattice(lattice: Sequence[CredalSet]) -> None:
        """
        Raises:
            GridError: If the lattice is empty or oversized, mixes spaces, lacks the
                vacuous set or lacks a singleton for some member extreme point
        """
        if not lattice or len(lattice) > settings.MAX_IMPOSSIBILITY_LATTICE:
            raise GridError(
                f"Lattice must hold between 1 and {settings.MAX_IMPOSSIBILITY_LATTICE} reports",
                data={"size": len(lattice)},
            )
        space = lattice[0].space
        if any(q.space != space for q in lattice):
            raise GridError("Lattice reports must share one outcome space")
        vacuous = CredalSet.vacuous(space)
        if not any(probability_service.credal_equivalent(vacuous, q) for q in lattice):
            raise GridError("Lattice must contain the vacuous set")
        for q in lattice:
            for e in q.extremes:
                if not any(r.is_precise and r.extremes[0].is_close(e) for r in lattice):
                    raise GridError("Lattice must contain every member's singleton", data={"missing": e.probs.tolist()})

    @staticmethod
    def impossibility_check(table: ArrayLike, lattice: Sequence[CredalSet]) -> ImpossibilityReport:
        """
        Dominance properness of a score table over a report lattice.

        The table is proper iff, for every belief P and report Q of the lattice,
        E_p[s(P)] >= E_p[s(Q)] for every extreme point p of P.

        Raises:
            GridError: On a malformed lattice or a table of the wrong shape
        """
        IPScoringService.validate_lattice(lattice)
        table = np.asarray(table, dtype=np.float64)
        if table.shape != (len(lattice), lattice[0].space.size):
            raise GridError(
                f"Score table of shape {table.shape} for {len(lattice)} reports", data={"shape": list(table.shape)}
            )
        constant = bool(np.all(np.ptp(table, axis=0) <= settings.TIE_TOLERANCE))

        for i, belief in enumerate(lattice):
            for j, report in enumerate(lattice):
                if i == j:
                    continue
                relation = aggregation_service.report_dominance(belief, table[i], table[j])
                if relation in (Relation.DISPREFERRED, Relation.INCOMPARABLE):
                    p = max(belief.extremes, key=lambda d: d.expectation(table[j]) - d.expectation(table[i]))
                    return ImpossibilityReport(
                        proper=False,
                        constant=constant,
                        violation={
                            "belief": IPScoringService.describe_report(belief),
                            "report": IPScoringService.describe_report(report),
                            "p": p.probs.tolist(),
                            "truthful": p.expectation(table[i]),
                            "misreport": p.expectation(table[j]),
                        },
                    )
        return ImpossibilityReport(proper=True, constant=constant)

    @staticmethod
    def centroid_table(
        rule_table: Callable[[Distribution], NDArray[np.float64]],
        lattice: Sequence[CredalSet],
    ) -> NDArray[np.float64]:
        """Score table applying a precise rule to each report's extreme-point centroid."""
        rows = []
        for q in lattice:
            centroid = probability_service.mixture(np.full(len(q.extremes), 1.0 / len(q.extremes)), q.extremes)
            rows.append(rule_table(centroid))
        return np.vstack(rows)

    @staticmethod
    def impossibility_suite(
        lattice: Sequence[CredalSet],
        random_tables: int,
        seed: int,
        constant_tables: int = 100,
    ) -> ImpossibilitySummary:
        """
        Run the dominance check over random tables and the preset tables.

        Random tables are uniform on [-1, 1); constant tables draw one value per outcome.
        """
        IPScoringService.validate_lattice(lattice)
        rng = np.random.default_rng(seed)
        n = lattice[0].space.size
        shape = (len(lattice), n)

        proper = proper_nonconstant = 0
        for _ in range(random_tables):
            result = IPScoringService.impossibility_check(rng.uniform(-1.0, 1.0, size=shape), lattice)
            if result.proper:
                proper += 1
                proper_nonconstant += not result.constant

        constants_pass = all(
            IPScoringService.impossibility_check(np.tile(rng.uniform(-1.0, 1.0, size=n), (shape[0], 1)), lattice).proper
            for _ in range(constant_tables)
        )

        brier = PreciseScoringRule.brier(n)
        presets = {
            "constant": IPScoringService.impossibility_check(np.zeros(shape), lattice),
            "centroid_brier": IPScoringService.impossibility_check(
                IPScoringService.centroid_table(partial(precise_scoring_service.score_vector, brier), lattice), lattice
            ),
        }
        summary = ImpossibilitySummary(
            lattice_size=len(lattice),
            random_tables=random_tables,
            proper_count=proper,
            proper_nonconstant_count=proper_nonconstant,
            constant_tables_passed=constants_pass,
            presets=presets,
        )
        logger.debug(f"Impossibility suite: {proper} proper of {random_tables} random tables")
        return summary


# Global instance
ip_scoring_service = IPScoringService()
