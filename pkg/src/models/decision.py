"""Decision-maker models: actions, utilities and best-action results."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.exceptions import ArgumentError

from .base import frozen_array


@dataclass(frozen=True, eq=False)
class DecisionProblem:
    """Finite action set with a utility table u(a, o) of shape (m, n).

    `action_values` holds the numeric action when the actions form a grid over
    [0, 1] (the continuous action space discretized), otherwise None.
    """

    actions: tuple[str, ...]
    utility: NDArray[np.float64]
    action_values: NDArray[np.float64] | None = None
    name: str = "table"

    def __post_init__(self) -> None:
        utility = frozen_array(self.utility, ndim=2)
        m, n = utility.shape
        if m < 2 or n < 2:
            raise ArgumentError(
                "A decision problem needs at least two actions and two outcomes", data={"shape": [m, n]}
            )
        if len(self.actions) != m:
            raise ArgumentError(f"{len(self.actions)} action labels for {m} utility rows")
        if not np.all(np.isfinite(utility)):
            raise ArgumentError("Utilities must be finite")
        object.__setattr__(self, "utility", utility)
        object.__setattr__(self, "actions", tuple(self.actions))
        if self.action_values is not None:
            object.__setattr__(self, "action_values", frozen_array(self.action_values, ndim=1))

    @property
    def n_actions(self) -> int:
        return self.utility.shape[0]

    @property
    def n_outcomes(self) -> int:
        return self.utility.shape[1]

    def action_label(self, index: int) -> str:
        return self.actions[index]

    def action_value(self, index: int) -> float | None:
        return None if self.action_values is None else float(self.action_values[index])

    @classmethod
    def from_table(cls, table: ArrayLike, actions: Sequence[str] | None = None, name: str = "table") -> DecisionProblem:
        table = np.asarray(table, dtype=np.float64)
        labels = tuple(actions) if actions is not None else tuple(f"a{i}" for i in range(table.shape[0]))
        return cls(labels, table, name=name)

    @classmethod
    def negative_squared(
        cls,
        step: float = 0.01,
        n_outcomes: int = 2,
        lower: float = 0.0,
        upper: float = 1.0,
    ) -> DecisionProblem:
        """u(a, o) = -(o - a)^2 on a uniform action grid.

        Outcomes take the values of `OutcomeSpace.values` (0 and 1 when binary),
        so the unique maximizer for a belief q is the grid point nearest E_q[o].
        """
        count = int(round((upper - lower) / step)) + 1
        grid = np.round(np.linspace(lower, upper, count), 12)
        outcomes = np.linspace(0.0, 1.0, n_outcomes)
        utility = -((outcomes[None, :] - grid[:, None]) ** 2)
        labels = tuple(f"{a:.10g}" for a in grid)
        return cls(labels, utility, action_values=grid, name="neg_squared")

    def rescaled(self, factor: float, shift: float = 0.0) -> DecisionProblem:
        """Affine transform factor * u + shift of the utility table."""
        return DecisionProblem(self.actions, factor * self.utility + shift, self.action_values, self.name)


@dataclass(frozen=True)
class BestAction:
    """Result of best_action: maximizing index, its expected utility and uniqueness."""

    index: int
    value: float
    unique: bool
    label: str = ""
    action_value: float | None = None


@dataclass(frozen=True)
class ActionFingerprint:
    """Best actions at the extreme points of a credal set.

    `actions` is the set of distinct best-action indices; `per_extreme` keeps
    one index per extreme point in extreme-point order. `ambiguous` is set when
    some extreme point has a non-unique best action.
    """

    actions: frozenset[int]
    per_extreme: tuple[int, ...] = ()
    ambiguous: bool = False
    ambiguous_extremes: tuple[int, ...] = field(default_factory=tuple)

    def values(self, problem: DecisionProblem) -> list[float]:
        """Sorted numeric actions of a grid problem."""
        if problem.action_values is None:
            raise ArgumentError("Fingerprint values need a grid decision problem")
        return sorted(float(problem.action_values[i]) for i in self.actions)
