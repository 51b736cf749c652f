"""Precise scoring rule definitions."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.exceptions import ArgumentError

from .base import frozen_array

# Potential G and its subgradient G', both taking a probability vector.
Potential = Callable[[NDArray[np.float64]], float]
Subgradient = Callable[[NDArray[np.float64]], NDArray[np.float64]]


class ScoringKind(StrEnum):
    """Families of precise scoring rules."""

    LOGARITHMIC = "logarithmic"
    QUADRATIC = "quadratic"
    BRIER = "brier"
    GNEITING = "gneiting-constructed"
    CONSTANT = "constant"


@dataclass(frozen=True, eq=False)
class PreciseScoringRule:
    """A scoring rule s(q, o) for precise reports.

    The logarithmic and quadratic families are a_o + b * base(q, o) with b > 0.
    The Gneiting family is built from a convex potential G and a subgradient G'.
    """

    kind: ScoringKind
    offsets: NDArray[np.float64] | None = None
    scale: float = 1.0
    potential: Potential | None = None
    subgradient: Subgradient | None = None
    constant: float = 0.0
    name: str = ""

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ArgumentError("Scoring rule scale b must be positive", data={"b": self.scale})
        if self.offsets is not None:
            object.__setattr__(self, "offsets", frozen_array(self.offsets, ndim=1))
        if self.kind is ScoringKind.GNEITING and (self.potential is None or self.subgradient is None):
            raise ArgumentError("A Gneiting-constructed rule needs both G and its subgradient")
        if not self.name:
            object.__setattr__(self, "name", str(self.kind))

    def offset(self, outcome: int) -> float:
        return 0.0 if self.offsets is None else float(self.offsets[outcome])

    @classmethod
    def logarithmic(cls, offsets: ArrayLike | None = None, scale: float = 1.0) -> PreciseScoringRule:
        return cls(ScoringKind.LOGARITHMIC, offsets=offsets, scale=scale)

    @classmethod
    def quadratic(cls, offsets: ArrayLike | None = None, scale: float = 1.0) -> PreciseScoringRule:
        return cls(ScoringKind.QUADRATIC, offsets=offsets, scale=scale)

    @classmethod
    def brier(cls, n: int = 2) -> PreciseScoringRule:
        """Negated Brier score; the quadratic rule with a_o = -1, b = 1."""
        return cls(ScoringKind.BRIER, offsets=-np.ones(n), scale=1.0)

    @classmethod
    def constant_rule(cls, value: float = 0.0) -> PreciseScoringRule:
        return cls(ScoringKind.CONSTANT, constant=value)

    @classmethod
    def from_potential(cls, potential: Potential, subgradient: Subgradient, name: str = "") -> PreciseScoringRule:
        return cls(ScoringKind.GNEITING, potential=potential, subgradient=subgradient, name=name or "gneiting")

    @classmethod
    def squared_norm(cls) -> PreciseScoringRule:
        """G(q) = sum q^2, which yields the quadratic family."""
        return cls.from_potential(lambda q: float(np.dot(q, q)), lambda q: 2.0 * np.asarray(q), name="sum_q_squared")

    @classmethod
    def negative_entropy(cls) -> PreciseScoringRule:
        """G(q) = sum q ln q, which yields the logarithmic score."""

        def potential(q: NDArray[np.float64]) -> float:
            q = np.asarray(q)
            support = q > 0
            return float(np.sum(q[support] * np.log(q[support])))

        def subgradient(q: NDArray[np.float64]) -> NDArray[np.float64]:
            with np.errstate(divide="ignore"):
                return np.log(np.asarray(q)) + 1.0

        return cls.from_potential(potential, subgradient, name="negative_entropy")

    @classmethod
    def linear_potential(cls, coefficients: ArrayLike) -> PreciseScoringRule:
        """Linear G (proper but not strictly)."""
        c = np.asarray(coefficients, dtype=np.float64)
        return cls.from_potential(lambda q: float(np.dot(c, q)), lambda q: c.copy(), name="linear")
