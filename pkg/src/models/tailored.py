"""Tailored and randomized tailored scoring rule models."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.config import settings
from src.core.exceptions import ArgumentError

from .aggregation import AggregationRule
from .base import frozen_array
from .decision import DecisionProblem
from .probability import CredalSet

# Fallback score Pi(Q, o), used for aggregation rules outside the support of theta.
FallbackScore = Callable[[CredalSet, int], float]


def zero_fallback(report: CredalSet, outcome: int) -> float:
    """The constant 0 score."""
    return 0.0


@dataclass(frozen=True, eq=False)
class TailoredRule:
    """s_rho(Q, o) = k * u(a*_{Q, rho}, o) + c.

    k is the forecaster's business share in the decision-maker's utility and
    c the fixed fee; both are non-negative.
    """

    problem: DecisionProblem
    rule: AggregationRule
    k: float = 1.0
    c: float = 0.0

    def __post_init__(self) -> None:
        if self.k < 0 or self.c < 0:
            raise ArgumentError("Business share k and fee c must be non-negative", data={"k": self.k, "c": self.c})

    def with_rule(self, rule: AggregationRule) -> TailoredRule:
        return TailoredRule(self.problem, rule, self.k, self.c)


class ThetaKind(StrEnum):
    """Support types of a distribution over fixed-lambda aggregation rules."""

    UNIFORM = "uniform"
    DISCRETE = "discrete"


@dataclass(frozen=True, eq=False)
class ThetaDistribution:
    """Distribution theta over fixed_linear aggregation rules.

    Both kinds are stored as weighted nodes: `nodes` is a (q x k) array of
    lambda vectors and `weights` their probabilities. A uniform theta on
    lambda in [lower, upper] (two extreme points) uses trapezoid nodes.
    `full_support` is true iff every lambda of the reference grid on [0, 1]
    carries positive weight.
    """

    kind: ThetaKind
    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]
    full_support: bool
    lower: float = 0.0
    upper: float = 1.0
    fallback: FallbackScore = field(default=zero_fallback)

    def __post_init__(self) -> None:
        nodes = frozen_array(self.nodes, ndim=2)
        weights = frozen_array(self.weights, ndim=1)
        if nodes.shape[0] != weights.shape[0]:
            raise ArgumentError("theta needs one weight per lambda node")
        if np.any(weights < 0) or abs(float(weights.sum()) - 1.0) > 1e-9:
            raise ArgumentError("theta weights must be non-negative and sum to 1", data={"sum": float(weights.sum())})
        if np.any(nodes < -1e-12) or np.any(np.abs(nodes.sum(axis=1) - 1.0) > 1e-9):
            raise ArgumentError("Every lambda node must lie on the simplex")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(
        cls,
        lower: float = 0.0,
        upper: float = 1.0,
        nodes: int | None = None,
        fallback: FallbackScore = zero_fallback,
    ) -> ThetaDistribution:
        """U[lower, upper] over lambda, integrated with a composite trapezoid rule."""
        count = settings.QUADRATURE_NODES if nodes is None else nodes
        if count < 3:
            raise ArgumentError("Quadrature needs at least 3 nodes", data={"nodes": count})
        if not 0.0 <= lower <= upper <= 1.0:
            raise ArgumentError("theta support must lie inside [0, 1]", data={"lower": lower, "upper": upper})
        lam = np.linspace(lower, upper, count)
        if upper > lower:
            weights = np.full(count, 1.0 / (count - 1))
            weights[[0, -1]] *= 0.5
        else:
            weights = np.full(count, 1.0 / count)
        full = lower == 0.0 and upper == 1.0
        return cls(
            ThetaKind.UNIFORM,
            np.column_stack([lam, 1.0 - lam]),
            weights,
            full_support=full,
            lower=lower,
            upper=upper,
            fallback=fallback,
        )

    @classmethod
    def discrete(
        cls,
        support: Sequence[tuple[ArrayLike, float]],
        fallback: FallbackScore = zero_fallback,
    ) -> ThetaDistribution:
        """Finite theta given as (lambda vector, weight) pairs."""
        if not support:
            raise ArgumentError("A discrete theta needs at least one support point")
        nodes = np.vstack([np.asarray(lam, dtype=np.float64) for lam, _ in support])
        weights = np.asarray([w for _, w in support], dtype=np.float64)
        full = bool(nodes.shape[1] == 2 and _covers_unit_grid(nodes[:, 0], weights))
        return cls(ThetaKind.DISCRETE, nodes, weights, full_support=full, fallback=fallback)

    @classmethod
    def point_mass(cls, weights: ArrayLike) -> ThetaDistribution:
        return cls.discrete([(weights, 1.0)])

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]

    @property
    def n_members(self) -> int:
        return self.nodes.shape[1]

    def rules(self) -> list[tuple[AggregationRule, float]]:
        return [(AggregationRule.fixed_linear(lam), float(w)) for lam, w in zip(self.nodes, self.weights, strict=True)]

    def density_at(self, weights: ArrayLike) -> float:
        """Probability mass theta puts on one lambda vector (node-wise)."""
        target = np.asarray(weights, dtype=np.float64)
        if target.shape != (self.n_members,):
            return 0.0
        hits = np.all(np.abs(self.nodes - target[None, :]) <= 1e-12, axis=1)
        return float(self.weights[hits].sum())

    def truncated(self, lower: float, upper: float) -> ThetaDistribution:
        """Restrict a uniform theta to lambda in [lower, upper]."""
        if self.kind is not ThetaKind.UNIFORM:
            raise ArgumentError("Only a uniform theta can be truncated")
        return ThetaDistribution.uniform(lower, upper, self.n_nodes, self.fallback)

    def describe(self) -> dict[str, Any]:
        if self.kind is ThetaKind.UNIFORM:
            return {"kind": "uniform", "lower": self.lower, "upper": self.upper, "nodes": self.n_nodes}
        return {
            "kind": "discrete",
            "support": [[lam.tolist(), float(w)] for lam, w in zip(self.nodes, self.weights, strict=True)],
        }


def _covers_unit_grid(lam: NDArray[np.float64], weights: NDArray[np.float64], step: float = 0.01) -> bool:
    """Positive weight at every lambda of the 0.01 reference grid."""
    positive = lam[weights > 0]
    grid = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    return all(np.any(np.abs(positive - g) <= 1e-12) for g in grid)


@dataclass(frozen=True, eq=False)
class ScoreLandscape:
    """Expected forecaster value V for every report of a grid.

    `reports` holds one descriptor per row ((q1, q2) for binary intervals),
    in grid order.
    """

    reports: tuple[tuple[float, ...], ...]
    values: NDArray[np.float64]
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = frozen_array(self.values, ndim=1)
        if values.shape[0] != len(self.reports):
            raise ArgumentError("A landscape needs one value per report")
        object.__setattr__(self, "values", values)

    @property
    def max_value(self) -> float:
        return float(np.max(self.values))

    def argmax(self, margin: float | None = None) -> list[tuple[float, ...]]:
        tol = settings.PROPERNESS_MARGIN if margin is None else margin
        best = self.max_value
        return [r for r, v in zip(self.reports, self.values, strict=True) if v >= best - tol]

    def rows(self) -> list[tuple[tuple[float, ...], float]]:
        return [(r, float(v)) for r, v in zip(self.reports, self.values, strict=True)]
