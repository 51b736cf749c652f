"""Finite outcome spaces, distributions and credal sets."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.config import settings
from src.core.exceptions import ArgumentError

from .base import ReprMixin, format_vector, frozen_array


@dataclass(frozen=True)
class OutcomeSpace:
    """Ordered, finite set of at least two named outcomes."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.labels) < 2:
            raise ArgumentError("An outcome space needs at least two outcomes", data={"labels": list(self.labels)})
        if len(set(self.labels)) != len(self.labels):
            raise ArgumentError("Outcome labels must be unique", data={"labels": list(self.labels)})

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def values(self) -> NDArray[np.float64]:
        """Numeric outcome values, evenly spaced on [0, 1] (0 and 1 on binary spaces)."""
        return np.linspace(0.0, 1.0, self.size)

    @classmethod
    def binary(cls) -> OutcomeSpace:
        return cls(("0", "1"))

    @classmethod
    def of_size(cls, n: int) -> OutcomeSpace:
        return cls(tuple(str(i) for i in range(n)))


@dataclass(frozen=True, eq=False, repr=False)
class Distribution(ReprMixin):
    """A point on the probability simplex over an outcome space."""

    probs: NDArray[np.float64]
    space: OutcomeSpace

    _repr_fields = ("probs",)

    def __post_init__(self) -> None:
        probs = frozen_array(self.probs, ndim=1)
        if probs.shape[0] != self.space.size:
            raise ArgumentError(
                f"Distribution has {probs.shape[0]} entries for {self.space.size} outcomes",
                data={"probs": probs.tolist(), "labels": list(self.space.labels)},
            )
        tolerance = settings.PROBABILITY_TOLERANCE
        if not np.all(np.isfinite(probs)) or np.any(probs < -tolerance):
            raise ArgumentError("Probabilities must be finite and non-negative", data={"probs": probs.tolist()})
        if abs(float(probs.sum()) - 1.0) > tolerance:
            raise ArgumentError(
                f"Probabilities sum to {float(probs.sum())!r}, not 1",
                data={"probs": probs.tolist()},
            )
        if np.any(probs < 0):
            probs = frozen_array(np.clip(probs, 0.0, None))
        object.__setattr__(self, "probs", probs)

    @classmethod
    def of(cls, probs: ArrayLike, space: OutcomeSpace | None = None) -> Distribution:
        array = np.asarray(probs, dtype=np.float64)
        if space is None:
            space = OutcomeSpace.of_size(array.shape[0])
        return cls(array, space)

    @classmethod
    def bernoulli(cls, x: float, space: OutcomeSpace | None = None) -> Distribution:
        """Two-outcome distribution [1 - x, x]."""
        return cls(np.array([1.0 - x, x]), space or OutcomeSpace.binary())

    @classmethod
    def point_mass(cls, space: OutcomeSpace, outcome: int) -> Distribution:
        probs = np.zeros(space.size)
        probs[outcome] = 1.0
        return cls(probs, space)

    @property
    def size(self) -> int:
        return self.space.size

    def distance(self, other: Distribution) -> float:
        """L-infinity distance."""
        return float(np.max(np.abs(self.probs - other.probs)))

    def is_close(self, other: Distribution, tolerance: float | None = None) -> bool:
        tol = settings.EQUALITY_TOLERANCE if tolerance is None else tolerance
        return self.space == other.space and self.distance(other) <= tol

    def expectation(self, values: ArrayLike) -> float:
        """E[values] with the convention 0 * (-inf) = 0."""
        values = np.asarray(values, dtype=np.float64)
        support = self.probs > 0
        return float(np.dot(self.probs[support], values[support]))

    def sort_key(self) -> tuple[float, ...]:
        """Lexicographic key read from the last outcome to the first."""
        return tuple(float(p) for p in self.probs[::-1])

    def __str__(self) -> str:
        return format_vector(self.probs)


@dataclass(frozen=True, repr=False)
class UtilityRange:
    """Closed range of expected values over a credal set."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ArgumentError("Utility range lower bound exceeds upper bound", data={"lower": self.lower})

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __repr__(self) -> str:
        return f"<UtilityRange([{self.lower:.6g}, {self.upper:.6g}])>"


@dataclass(frozen=True, eq=False, repr=False)
class CredalSet(ReprMixin):
    """A credal set given by a finite generating set of distributions.

    Extreme points are computed on first access and cached; the computation is
    pure, so concurrent first accesses agree.
    """

    generators: tuple[Distribution, ...]
    _repr_fields = ("generators",)

    def __post_init__(self) -> None:
        generators = tuple(self.generators)
        if not generators:
            raise ArgumentError("A credal set needs at least one generator")
        space = generators[0].space
        if any(g.space != space for g in generators):
            raise ArgumentError("All generators must share one outcome space")
        object.__setattr__(self, "generators", generators)

    @classmethod
    def of(cls, generators: Sequence[Distribution | ArrayLike], space: OutcomeSpace | None = None) -> CredalSet:
        dists = []
        for g in generators:
            dists.append(g if isinstance(g, Distribution) else Distribution.of(g, space))
        return cls(tuple(dists))

    @classmethod
    def interval(cls, lower: float, upper: float, space: OutcomeSpace | None = None) -> CredalSet:
        """Binary interval [lower, upper] on P(outcome 1)."""
        if lower > upper:
            raise ArgumentError("Interval lower end exceeds upper end", data={"lower": lower, "upper": upper})
        space = space or OutcomeSpace.binary()
        return cls((Distribution.bernoulli(lower, space), Distribution.bernoulli(upper, space)))

    @classmethod
    def singleton(cls, dist: Distribution) -> CredalSet:
        return cls((dist,))

    @classmethod
    def vacuous(cls, space: OutcomeSpace) -> CredalSet:
        """The whole simplex, generated by its vertices."""
        return cls(tuple(Distribution.point_mass(space, o) for o in range(space.size)))

    @property
    def space(self) -> OutcomeSpace:
        return self.generators[0].space

    @cached_property
    def extremes(self) -> tuple[Distribution, ...]:
        """Extreme points, sorted by `Distribution.sort_key`."""
        from src.services.probability_service import probability_service

        return tuple(probability_service.extreme_points(self))

    @property
    def is_precise(self) -> bool:
        return len(self.extremes) == 1

    def extreme_matrix(self) -> NDArray[np.float64]:
        """Extreme points stacked as rows (k x n)."""
        return np.vstack([e.probs for e in self.extremes])

    def bounds(self) -> tuple[float, float]:
        """Lower and upper P(outcome 1) of a binary credal set."""
        upper_probs = [float(e.probs[-1]) for e in self.extremes]
        return min(upper_probs), max(upper_probs)

