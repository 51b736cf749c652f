"""
Run configuration schemas.

A run is described by one JSON file validated by `RunConfig`; the nested
specs convert themselves into domain models.
"""

from typing import Annotated, Any, Literal

import numpy as np
from pydantic import Field, field_validator, model_validator

from src.core.config import settings
from src.models.aggregation import AggregationKind, AggregationRule
from src.models.decision import DecisionProblem
from src.models.probability import CredalSet, OutcomeSpace
from src.models.scoring import PreciseScoringRule, ScoringKind
from src.models.tailored import ThetaDistribution
from src.schemas.common import BaseSchema, NonNegative, Probability

Mode = Literal["dictator", "minmax", "randomized"]
ReportStep = Annotated[float, Field(gt=0.0, le=0.5, description="Report grid step; must divide 1")]


def _divides_one(step: float) -> float:
    parts = round(1.0 / step)
    if abs(parts * step - 1.0) > 1e-9:
        raise ValueError(f"step {step} does not divide 1")
    return step


class CredalSetSpec(BaseSchema):
    """A credal set: explicit generators, or a binary [lower, upper] interval."""

    outcomes: list[str] | None = Field(None, min_length=2, description="Outcome labels")
    generators: list[list[float]] | None = Field(None, min_length=1, description="Generating distributions")
    interval: tuple[Probability, Probability] | None = Field(None, description="Binary [lower, upper] on outcome 1")

    @model_validator(mode="after")
    def exactly_one_form(self) -> "CredalSetSpec":
        if (self.generators is None) == (self.interval is None):
            raise ValueError("Give exactly one of 'generators' or 'interval'")
        if self.interval is not None and self.interval[0] > self.interval[1]:
            raise ValueError("interval lower end exceeds upper end")
        return self

    def space(self) -> OutcomeSpace:
        if self.outcomes is not None:
            return OutcomeSpace(tuple(self.outcomes))
        if self.generators is not None:
            return OutcomeSpace.of_size(len(self.generators[0]))
        return OutcomeSpace.binary()

    def to_credal_set(self) -> CredalSet:
        space = self.space()
        if self.interval is not None:
            return CredalSet.interval(self.interval[0], self.interval[1], space)
        return CredalSet.of(self.generators, space)


class RuleSpec(BaseSchema):
    """A precise scoring rule."""

    kind: Literal["logarithmic", "quadratic", "brier", "constant", "gneiting-constructed"]
    offsets: list[float] | None = None
    scale: float = Field(1.0, gt=0.0)
    constant: float = 0.0
    potential: Literal["squared_norm", "negative_entropy"] | None = None

    def to_rule(self, n_outcomes: int = 2) -> PreciseScoringRule:
        match ScoringKind(self.kind):
            case ScoringKind.LOGARITHMIC:
                return PreciseScoringRule.logarithmic(self.offsets, self.scale)
            case ScoringKind.QUADRATIC:
                return PreciseScoringRule.quadratic(self.offsets, self.scale)
            case ScoringKind.BRIER:
                return PreciseScoringRule.brier(n_outcomes)
            case ScoringKind.CONSTANT:
                return PreciseScoringRule.constant_rule(self.constant)
        if self.potential == "negative_entropy":
            return PreciseScoringRule.negative_entropy()
        return PreciseScoringRule.squared_norm()


class AggregationSpec(BaseSchema):
    """{"kind": "egalitarian"} or {"kind": "fixed_linear", "lambda": [...]}."""

    kind: AggregationKind
    weights: list[float] | None = Field(None, alias="lambda", description="Simplex weights over extreme points")

    @model_validator(mode="after")
    def weights_match_kind(self) -> "AggregationSpec":
        if (self.kind is AggregationKind.FIXED_LINEAR) != (self.weights is not None):
            raise ValueError("'lambda' is required for fixed_linear and only allowed there")
        return self

    def to_rule(self) -> AggregationRule:
        if self.weights is not None:
            return AggregationRule.fixed_linear(self.weights)
        return AggregationRule(self.kind)


class ActionGrid(BaseSchema):
    grid: tuple[float, float, float] = Field(..., description="[lower, upper, step] of a numeric action grid")

    @field_validator("grid")
    @classmethod
    def validate_grid(cls, v: tuple[float, float, float]) -> tuple[float, float, float]:
        lower, upper, step = v
        if not lower < upper or step <= 0:
            raise ValueError("Action grid needs lower < upper and a positive step")
        return v


class DecisionProblemSpec(BaseSchema):
    """Actions as a numeric grid or labels; utility "neg_squared" or an explicit table."""

    actions: ActionGrid | list[str] = Field(
        default_factory=lambda: ActionGrid(grid=(0.0, 1.0, settings.DEFAULT_ACTION_STEP))
    )
    utility: Literal["neg_squared"] | list[list[float]] = "neg_squared"

    @model_validator(mode="after")
    def utility_matches_actions(self) -> "DecisionProblemSpec":
        if self.utility == "neg_squared" and not isinstance(self.actions, ActionGrid):
            raise ValueError("'neg_squared' utility needs a numeric action grid")
        if isinstance(self.utility, list) and isinstance(self.actions, list) and len(self.actions) != len(self.utility):
            raise ValueError("One utility row is required per action label")
        return self

    def to_problem(self, n_outcomes: int = 2) -> DecisionProblem:
        if self.utility == "neg_squared":
            lower, upper, step = self.actions.grid
            return DecisionProblem.negative_squared(step, n_outcomes, lower, upper)
        labels = self.actions if isinstance(self.actions, list) else None
        return DecisionProblem.from_table(np.asarray(self.utility), labels)


class ThetaSpec(BaseSchema):
    """Uniform theta on lambda in [lower, upper], or a discrete list of (lambda, weight)."""

    kind: Literal["uniform", "discrete"] = "uniform"
    lower: Probability = 0.0
    upper: Probability = 1.0
    nodes: int | None = Field(None, ge=3, description="Trapezoid nodes")
    support: list[tuple[list[float], float]] | None = None

    @model_validator(mode="after")
    def support_matches_kind(self) -> "ThetaSpec":
        if self.kind == "discrete" and not self.support:
            raise ValueError("A discrete theta needs a non-empty 'support'")
        if self.lower > self.upper:
            raise ValueError("theta lower bound exceeds upper bound")
        return self

    def to_theta(self, nodes: int | None = None) -> ThetaDistribution:
        if self.kind == "discrete":
            return ThetaDistribution.discrete(self.support)
        return ThetaDistribution.uniform(self.lower, self.upper, nodes or self.nodes)


class RunConfig(BaseSchema):
    """One harness run."""

    belief: CredalSetSpec = Field(default_factory=lambda: CredalSetSpec(interval=(0.4, 0.6)))
    problem: DecisionProblemSpec = Field(default_factory=DecisionProblemSpec)
    mode: Mode = "randomized"
    weights: float | list[float] = Field(0.5, alias="lambda", description="Dictator mixing weight or vector")
    theta: ThetaSpec = Field(default_factory=ThetaSpec)
    rule: AggregationSpec | None = Field(None, description="Rule checked by the axiom suite")
    grid_step: ReportStep = settings.DEFAULT_GRID_STEP
    k: NonNegative = 1.0
    c: NonNegative = 0.0
    output: str | None = None
    seed: int = Field(settings.DEFAULT_SEED, ge=0)
    trials: int = Field(settings.DEFAULT_TRIALS, ge=1)
    quadrature_nodes: int | None = Field(None, ge=3)
    report: CredalSetSpec | None = Field(None, description="Report scored by the score command")
    scoring_rule: RuleSpec | None = Field(None, description="Precise rule compared by the score command")
    outcome: int | None = Field(None, ge=0, description="Outcome scored by the score command")
    lattice: list[CredalSetSpec] | None = Field(None, description="Impossibility report lattice")
    tables: int = Field(10_000, ge=1, description="Random tables for the impossibility check")

    @field_validator("grid_step")
    @classmethod
    def validate_grid_step(cls, v: float) -> float:
        return _divides_one(v)

    @field_validator("weights")
    @classmethod
    def validate_weights(cls, v: float | list[float]) -> float | list[float]:
        if isinstance(v, float | int):
            if not 0.0 <= v <= 1.0:
                raise ValueError("lambda must lie in [0, 1]")
            return float(v)
        if any(w < 0 for w in v) or abs(sum(v) - 1.0) > 1e-9:
            raise ValueError("lambda must lie on the simplex")
        return v

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Copy with CLI overrides applied (None values are ignored), re-validated."""
        payload = self.model_dump(by_alias=True, exclude_none=True)
        payload.update({key: value for key, value in overrides.items() if value is not None})
        return RunConfig.model_validate(payload)

    def lambda_vector(self) -> list[float]:
        if isinstance(self.weights, float):
            return [self.weights, 1.0 - self.weights]
        return list(self.weights)

    def aggregation_rule(self) -> AggregationRule:
        """Rule of a deterministic mode; the randomized mode draws fixed_linear rules from theta."""
        if self.mode == "minmax":
            return AggregationRule.egalitarian()
        if self.mode == "dictator":
            return AggregationRule.fixed_linear(self.lambda_vector())
        return AggregationRule.utilitarian()

    def axiom_rule(self) -> AggregationRule:
        if self.rule is not None:
            return self.rule.to_rule()
        return self.aggregation_rule()

    def to_belief(self) -> CredalSet:
        return self.belief.to_credal_set()

    def to_problem(self) -> DecisionProblem:
        return self.problem.to_problem(self.belief.space().size)

    def to_theta(self) -> ThetaDistribution:
        return self.theta.to_theta(self.quadrature_nodes)
