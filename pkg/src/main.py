"""
Command-line entry point.

Commands: landscape, verify, axioms, impossibility and score. A run is
configured by an optional JSON file (--config) with flag overrides; JSON
verdicts go to stdout and logs to stderr.

Exit codes: 0 success or verdict met, 1 verdict failed, 2 usage error.
"""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any

from src.core.config import settings
from src.core.exception_handlers import handle_cli_error
from src.core.exceptions import ExitCode
from src.core.logging import setup_logging
from src.core.serialization import dumps, load_json
from src.schemas.config import CredalSetSpec, RunConfig
from src.tasks.landscape_tasks import run_landscape
from src.tasks.verification_tasks import run_axioms, run_impossibility, run_score, run_verify

logger = logging.getLogger(__name__)

COMMANDS: dict[str, Callable[[RunConfig], dict[str, Any]]] = {
    "landscape": run_landscape,
    "verify": run_verify,
    "axioms": run_axioms,
    "impossibility": run_impossibility,
    "score": run_score,
}


def _interval(text: str) -> tuple[float, float]:
    try:
        lower, upper = (float(part) for part in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected Q1,Q2 but got {text!r}") from e
    return lower, upper


def create_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one sub-command per task."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration")
    common.add_argument("--mode", choices=["dictator", "minmax", "randomized"], help="Aggregation mode")
    common.add_argument("--step", type=float, dest="grid_step", metavar="FLOAT", help="Report grid step")
    common.add_argument("--seed", type=int, metavar="INT", help="Random seed")
    common.add_argument("--out", dest="output", metavar="PATH", help="Output file")
    common.add_argument("--quadrature-nodes", type=int, metavar="INT", help="Trapezoid nodes for uniform theta")
    common.add_argument("--lambda", type=float, dest="weights", metavar="FLOAT", help="Dictator mixing weight")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help=f"Log level (default {settings.LOG_LEVEL})",
    )

    parser = argparse.ArgumentParser(
        prog="credal-scoring",
        description="Tailored and randomized scoring rules for imprecise forecasts.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("landscape", parents=[common], help="Write the forecaster-value landscape as CSV")
    commands.add_parser("verify", parents=[common], help="Check (strict) properness of the configured rule")

    axioms = commands.add_parser("axioms", parents=[common], help="Check Pareto efficiency, IIA and dictatorship")
    axioms.add_argument("--trials", type=int, metavar="INT", help="Sampled profiles")
    axioms.add_argument(
        "--rule", choices=["utilitarian", "egalitarian", "fixed_linear"], help="Rule to check (default: from mode)"
    )

    impossibility = commands.add_parser("impossibility", parents=[common], help="Enumerate score tables on a lattice")
    impossibility.add_argument("--tables", type=int, metavar="INT", help="Random tables to check")

    score = commands.add_parser("score", parents=[common], help="Tailored score of one report")
    score.add_argument("--report", type=_interval, metavar="Q1,Q2", help="Binary interval report")
    score.add_argument("--outcome", type=int, metavar="INT", help="Outcome index (default: all)")
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    """Load the config file (if any) and apply flag overrides."""
    config = RunConfig.model_validate(load_json(args.config)) if args.config else RunConfig()
    overrides: dict[str, Any] = {
        "mode": args.mode,
        "grid_step": args.grid_step,
        "seed": args.seed,
        "output": args.output,
        "quadrature_nodes": args.quadrature_nodes,
        "lambda": args.weights,
        "trials": getattr(args, "trials", None),
        "tables": getattr(args, "tables", None),
        "outcome": getattr(args, "outcome", None),
    }
    report = getattr(args, "report", None)
    if report is not None:
        overrides["report"] = CredalSetSpec(interval=report).model_dump(exclude_none=True)
    config = config.with_overrides(**overrides)

    rule = getattr(args, "rule", None)
    if rule == "fixed_linear":
        config = config.with_overrides(rule={"kind": rule, "lambda": config.lambda_vector()})
    elif rule is not None:
        config = config.with_overrides(rule={"kind": rule})
    return config


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    parser = create_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)

    try:
        config = build_config(args)
        logger.debug(f"Running {args.command} with {config.model_dump(by_alias=True, exclude_none=True)}")
        result = COMMANDS[args.command](config)
    except Exception as e:
        return handle_cli_error(e)

    if args.command == "landscape" and "csv" in result:
        sys.stdout.write(result["csv"])
    else:
        print(dumps(result))
    return ExitCode.SUCCESS if result.get("status") == "success" else ExitCode.VERDICT_FAILED


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
