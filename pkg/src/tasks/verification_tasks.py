"""
Verification tasks.

Orchestrates the properness verdict of a run, the social-choice axiom
suite, the impossibility enumeration and one-shot scoring. Every task
returns a JSON-ready dict whose "status" is "success" or "failed".
"""

import logging
from typing import Any

import numpy as np

from src.core.exceptions import ConfigurationError
from src.models.aggregation import AggregationKind
from src.models.probability import Distribution
from src.models.tailored import TailoredRule
from src.schemas.config import RunConfig
from src.services.aggregation_service import aggregation_service
from src.services.ip_scoring_service import ip_scoring_service
from src.services.precise_scoring_service import precise_scoring_service
from src.tasks.landscape_tasks import build_valuer

logger = logging.getLogger(__name__)

# randomized runs must be strictly proper, deterministic ones proper but not strict
EXPECTED_VERDICTS = {
    "randomized": {"is_proper": True, "is_strict": True},
    "dictator": {"is_proper": True, "is_strict": False},
    "minmax": {"is_proper": True, "is_strict": False},
}


def _status(ok: bool) -> str:
    return "success" if ok else "failed"


def run_verify(config: RunConfig) -> dict[str, Any]:
    """
    Properness verdict of the run over its interval report grid.

    Raises:
        ConfigurationError: If the grid step exceeds 0.1 or the belief is not binary
    """
    if config.grid_step > 0.1:
        raise ConfigurationError("verify needs a report grid step in (0, 0.1]", data={"grid_step": config.grid_step})
    belief = config.to_belief()
    if belief.space.size != 2:
        raise ConfigurationError("verify runs on binary beliefs only", data={"outcomes": belief.space.size})

    valuer, metadata = build_valuer(config)
    reports = ip_scoring_service.interval_report_grid(config.grid_step, belief.space)
    report = ip_scoring_service.verify_properness(valuer, belief, reports)

    expected = EXPECTED_VERDICTS[config.mode]
    met = report.is_proper == expected["is_proper"] and report.is_strict == expected["is_strict"]
    if met:
        logger.info(f"✓ {config.mode}: proper={report.is_proper} strict={report.is_strict} as expected")
    else:
        logger.warning(f"{config.mode}: expected {expected}, got proper={report.is_proper} strict={report.is_strict}")
    return {
        "status": _status(met),
        "expected": expected,
        **report.model_dump(),
        "metadata": metadata,
    }


def run_axioms(config: RunConfig) -> dict[str, Any]:
    """
    Pareto efficiency, IIA and dictator search for the configured rule.

    Profiles have one member per lambda weight (two for the other kinds) and
    three inputs. The run fails only when Pareto efficiency or IIA fails.
    """
    rule = config.axiom_rule()
    members = rule.weights.shape[0] if rule.kind is AggregationKind.FIXED_LINEAR else 2
    rng = np.random.default_rng(config.seed)
    profiles = aggregation_service.sample_profiles(rng, config.trials, members=members, inputs=3)

    pareto = aggregation_service.check_pareto_efficiency(rule, profiles)
    iia = aggregation_service.check_iia(rule, profiles)

    belief = config.to_belief()
    problem = config.to_problem()
    dictator = aggregation_service.search_dictator(rule, problem, belief, seed=config.seed)
    result: dict[str, Any] = {
        "status": _status(pareto.passed and iia.passed),
        "rule": rule.describe(),
        "pareto_efficiency": {"passed": pareto.passed, **pareto.model_dump()},
        "iia": {"passed": iia.passed, **iia.model_dump()},
        "dictator": dictator.model_dump(),
    }
    if dictator.found:
        manipulation = aggregation_service.dictator_manipulation(rule, problem, belief, config.k, config.c)
        result["manipulation"] = {"costless": manipulation.costless, **manipulation.model_dump()}
    logger.info(
        f"Axioms for {rule.describe()}: PE {'pass' if pareto.passed else 'FAIL'}, "
        f"IIA {'pass' if iia.passed else 'FAIL'}, dictator {'found' if dictator.found else 'none found'}"
    )
    return result


def run_impossibility(config: RunConfig) -> dict[str, Any]:
    """
    Dominance properness over random and preset score tables on a report lattice.

    The run succeeds when no proper table is non-constant, constant tables pass
    and the centroid-Brier preset fails.
    """
    if config.lattice:
        lattice = [spec.to_credal_set() for spec in config.lattice]
    else:
        lattice = ip_scoring_service.default_lattice()
    summary = ip_scoring_service.impossibility_suite(lattice, config.tables, config.seed)
    ok = summary.consistent and summary.presets["constant"].proper and not summary.presets["centroid_brier"].proper
    logger.info(
        f"Impossibility over {summary.random_tables} tables: {summary.proper_count} proper, "
        f"{summary.proper_nonconstant_count} proper and non-constant"
    )
    return {
        "status": _status(ok),
        "consistent": summary.consistent,
        "lattice": [ip_scoring_service.describe_report(q) for q in lattice],
        **summary.model_dump(),
    }


def run_score(config: RunConfig) -> dict[str, Any]:
    """
    Tailored score of one report, for one outcome or all of them.

    The randomized mode reports the expected score over theta. The report
    defaults to the belief. With a precise report and a configured scoring rule,
    the classical score of that report is included for comparison.
    """
    report = config.report.to_credal_set() if config.report is not None else config.to_belief()
    problem = config.to_problem()
    n = problem.n_outcomes
    if report.space.size != n:
        raise ConfigurationError(f"Report over {report.space.size} outcomes for a {n}-outcome problem")
    if config.outcome is not None and config.outcome >= n:
        raise ConfigurationError(f"Outcome index {config.outcome} outside 0..{n - 1}")
    outcomes = range(n) if config.outcome is None else [config.outcome]

    rule = TailoredRule(problem, config.aggregation_rule(), config.k, config.c)
    result: dict[str, Any] = {
        "status": "success",
        "mode": config.mode,
        "report": ip_scoring_service.describe_report(report),
    }
    if config.mode == "randomized":
        theta = config.to_theta()
        expected = ip_scoring_service.expected_randomized_score(theta, rule, report)
        result["theta"] = theta.describe()
        result["scores"] = {report.space.labels[o]: float(expected[o]) for o in outcomes}
    else:
        action = ip_scoring_service.optimal_action(problem, rule.rule, report)
        result["action"] = action.action_value if action.action_value is not None else action.label
        result["scores"] = {
            report.space.labels[o]: ip_scoring_service.tailored_score(rule, report, o) for o in outcomes
        }

    if config.scoring_rule is not None and report.is_precise:
        precise_rule = config.scoring_rule.to_rule(n)
        point: Distribution = report.extremes[0]
        result["precise_scores"] = {
            report.space.labels[o]: precise_scoring_service.score(precise_rule, point, o) for o in outcomes
        }
    return result
