"""
Landscape tasks.

Builds the forecaster-value landscape of a run over the binary interval
report grid and writes it as CSV.
"""

import csv
import io
import logging
from typing import Any

from src.core.config import settings
from src.core.exceptions import ConfigurationError
from src.core.serialization import write_text
from src.models.tailored import ScoreLandscape, TailoredRule
from src.schemas.config import RunConfig
from src.services.ip_scoring_service import Valuer, ip_scoring_service

logger = logging.getLogger(__name__)


def build_valuer(config: RunConfig) -> tuple[Valuer, dict[str, Any]]:
    """
    Forecaster value V for the run's mode, with metadata describing it.

    Dictator and minmax modes use a deterministic tailored rule; the randomized
    mode integrates fixed_linear rules over theta.
    """
    rule = TailoredRule(config.to_problem(), config.aggregation_rule(), config.k, config.c)
    metadata: dict[str, Any] = {
        "mode": config.mode,
        "belief": ip_scoring_service.describe_report(config.to_belief()),
        "grid_step": config.grid_step,
        "k": config.k,
        "c": config.c,
    }
    if config.mode == "randomized":
        theta = config.to_theta()
        metadata["theta"] = theta.describe()
        return ip_scoring_service.randomized_valuer(theta, rule), metadata
    metadata["rule"] = rule.rule.describe()
    return ip_scoring_service.deterministic_valuer(rule), metadata


def generate_landscape(config: RunConfig) -> ScoreLandscape:
    """
    Evaluate V over the interval report grid of the run.

    Raises:
        ConfigurationError: If the belief is not over two outcomes
    """
    belief = config.to_belief()
    if belief.space.size != 2:
        raise ConfigurationError("Landscapes are defined for binary beliefs only", data={"outcomes": belief.space.size})
    valuer, metadata = build_valuer(config)
    reports = ip_scoring_service.interval_report_grid(config.grid_step, belief.space)
    logger.info(f"Evaluating {config.mode} landscape over {len(reports)} reports (step {config.grid_step})")
    return ip_scoring_service.build_landscape(valuer, belief, reports, metadata)


def landscape_csv(landscape: ScoreLandscape, digits: int | None = None) -> str:
    """CSV text with header q1,q2,value in grid order."""
    precision = settings.CSV_SIGNIFICANT_DIGITS if digits is None else digits
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["q1", "q2", "value"])
    for (q1, q2), value in landscape.rows():
        writer.writerow([f"{q1:.{precision}g}", f"{q2:.{precision}g}", f"{value:.{precision}g}"])
    return buffer.getvalue()


def run_landscape(config: RunConfig) -> dict[str, Any]:
    """
    Generate the landscape and write it to `config.output` when given.

    Returns:
        Summary with the row count, maximum, argmax reports and the CSV text
        when no output path is configured
    """
    landscape = generate_landscape(config)
    text = landscape_csv(landscape)
    summary: dict[str, Any] = {
        "status": "success",
        "rows": len(landscape.reports),
        "max_value": landscape.max_value,
        "argmax": [list(r) for r in landscape.argmax()],
        "metadata": landscape.metadata,
    }
    if config.output:
        summary["output"] = str(write_text(config.output, text))
        logger.info(f"✓ Wrote landscape with {len(landscape.reports)} rows to {summary['output']}")
    else:
        summary["csv"] = text
    return summary
