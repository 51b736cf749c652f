"""Aggregation rules over expected-utility profiles."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import Protocol

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.config import settings
from src.core.exceptions import ArgumentError

from .base import ReprMixin, frozen_array


class AggregationKind(StrEnum):
    """Built-in linear aggregation rules."""

    UTILITARIAN = "utilitarian"
    EGALITARIAN = "egalitarian"
    FIXED_LINEAR = "fixed_linear"


class Relation(StrEnum):
    """Outcome of comparing two inputs under a partial order."""

    PREFERRED = "⪰"
    DISPREFERRED = "⪯"
    INDIFFERENT = "both"
    INCOMPARABLE = "incomparable"


class Aggregator(Protocol):
    """Anything mapping a (k x m) profile table to m aggregated values."""

    def __call__(self, values: NDArray[np.float64]) -> NDArray[np.float64]: ...


@dataclass(frozen=True, eq=False, repr=False)
class AggregationRule(ReprMixin):
    """A linear aggregation rule rho.

    `weights` is the simplex vector lambda over the extreme points a
    fixed_linear rule is applied to, and None for the other kinds.
    """

    kind: AggregationKind
    weights: NDArray[np.float64] | None = None

    _repr_fields = ("kind", "weights")

    def __post_init__(self) -> None:
        if self.kind is AggregationKind.FIXED_LINEAR:
            if self.weights is None:
                raise ArgumentError("A fixed_linear rule needs a lambda vector")
            weights = frozen_array(self.weights, ndim=1)
            if np.any(weights < 0) or abs(float(weights.sum()) - 1.0) > settings.PROBABILITY_TOLERANCE * 10:
                raise ArgumentError("lambda must lie on the simplex", data={"lambda": weights.tolist()})
            object.__setattr__(self, "weights", weights)
        elif self.weights is not None:
            raise ArgumentError(f"A {self.kind} rule takes no lambda")

    @classmethod
    def utilitarian(cls) -> AggregationRule:
        return cls(AggregationKind.UTILITARIAN)

    @classmethod
    def egalitarian(cls) -> AggregationRule:
        return cls(AggregationKind.EGALITARIAN)

    @classmethod
    def fixed_linear(cls, weights: ArrayLike) -> AggregationRule:
        return cls(AggregationKind.FIXED_LINEAR, np.asarray(weights, dtype=np.float64))

    @classmethod
    def mixing(cls, lam: float) -> AggregationRule:
        """Two-member fixed_linear rule (lam, 1 - lam)."""
        return cls.fixed_linear([lam, 1.0 - lam])

    def describe(self) -> dict:
        payload: dict = {"kind": str(self.kind)}
        if self.weights is not None:
            payload["lambda"] = self.weights.tolist()
        return payload


@dataclass(frozen=True, eq=False)
class UtilityProfile:
    """Expected utility of m inputs under each of k member distributions (k x m)."""

    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        values = frozen_array(self.values, ndim=2)
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise ArgumentError("A utility profile needs at least one member and one input")
        if not np.all(np.isfinite(values)):
            raise ArgumentError("Utility profiles must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values: ArrayLike) -> UtilityProfile:
        return cls(np.asarray(values, dtype=np.float64))

    @property
    def n_members(self) -> int:
        return self.values.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.values.shape[1]

    def without_input(self, index: int) -> UtilityProfile:
        return UtilityProfile(np.delete(self.values, index, axis=1))
