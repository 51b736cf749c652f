"""Decision service.

Best actions for precise beliefs, uniqueness sweeps over belief grids and
the action fingerprint of a credal set.
"""

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.core.config import settings
from src.core.exceptions import ArgumentError
from src.models.decision import ActionFingerprint, BestAction, DecisionProblem
from src.models.probability import CredalSet, Distribution
from src.services.probability_service import probability_service

logger = logging.getLogger(__name__)


def lowest_argmax(values: NDArray[np.float64], tolerance: float | None = None) -> tuple[NDArray[np.int64], NDArray]:
    """
    Row-wise argmax with ties broken by lowest index.

    Every entry within `tolerance` of its row maximum counts as tied.

    Returns:
        Tuple of (chosen indices, whether each row's maximizer is unique)
    """
    tol = settings.TIE_TOLERANCE if tolerance is None else tolerance
    values = np.atleast_2d(values)
    best = values.max(axis=1, keepdims=True)
    tied = values >= best - tol
    return tied.argmax(axis=1), tied.sum(axis=1) == 1


class DecisionService:
    """Service for the decision-maker's side."""

    @staticmethod
    def expected_utilities(problem: DecisionProblem, beliefs: ArrayLike) -> NDArray[np.float64]:
        """
        E_q[u(a, o)] for every action; rows of `beliefs` give one row each.

        Raises:
            ArgumentError: If the belief dimension does not match the outcomes
        """
        beliefs = np.asarray(beliefs, dtype=np.float64)
        if beliefs.shape[-1] != problem.n_outcomes:
            raise ArgumentError(f"Beliefs over {beliefs.shape[-1]} outcomes for a {problem.n_outcomes}-outcome problem")
        return beliefs @ problem.utility.T

    @staticmethod
    def best_action(problem: DecisionProblem, belief: Distribution | ArrayLike) -> BestAction:
        """
        argmax_a E_belief[u(a, o)].

        Ties (within the tie tolerance) go to the lowest action index and
        clear the `unique` flag.
        """
        probs = belief.probs if isinstance(belief, Distribution) else np.asarray(belief, dtype=np.float64)
        values = DecisionService.expected_utilities(problem, probs)
        index, unique = lowest_argmax(values)
        i = int(index[0])
        return BestAction(
            index=i,
            value=float(values[i]),
            unique=bool(unique[0]),
            label=problem.action_label(i),
            action_value=problem.action_value(i),
        )

    @staticmethod
    def belief_grid(n_outcomes: int, grid_step: float, offset: float = 0.0) -> NDArray[np.float64]:
        """
        Beliefs on a simplex grid.

        Binary grids are {offset + j * step} inside [0, 1]; larger spaces use all
        compositions of 1/step into n parts.
        """
        if not 0.0 < grid_step <= 0.1:
            raise ArgumentError("grid_step must lie in (0, 0.1]", data={"grid_step": grid_step})
        if n_outcomes == 2:
            count = int(np.floor((1.0 - offset) / grid_step + 1e-9)) + 1
            upper = np.clip(offset + grid_step * np.arange(count), 0.0, 1.0)
            return np.column_stack([1.0 - upper, upper])
        return probability_service.simplex_grid(n_outcomes, grid_step)

    @staticmethod
    def tied_beliefs(problem: DecisionProblem, grid_step: float, offset: float = 0.0) -> list[list[float]]:
        """Grid beliefs at which the best action is not unique."""
        beliefs = DecisionService.belief_grid(problem.n_outcomes, grid_step, offset)
        _, unique = lowest_argmax(DecisionService.expected_utilities(problem, beliefs))
        return beliefs[~unique].tolist()

    @staticmethod
    def certify_unique_argmax(problem: DecisionProblem, grid_step: float, offset: float = 0.0) -> bool:
        """
        Whether the best action is unique at every belief of the grid.

        A necessary-condition check at grid resolution, not a proof.
        """
        ties = DecisionService.tied_beliefs(problem, grid_step, offset)
        if ties:
            logger.debug(f"{len(ties)} grid beliefs with tied best actions, first {ties[0]}")
        return not ties

    @staticmethod
    def action_fingerprint(problem: DecisionProblem, credal: CredalSet) -> ActionFingerprint:
        """Best action at each extreme point of the credal set."""
        per_extreme = []
        ambiguous = []
        for i, extreme in enumerate(credal.extremes):
            best = DecisionService.best_action(problem, extreme)
            per_extreme.append(best.index)
            if not best.unique:
                ambiguous.append(i)
        if ambiguous:
            logger.warning(f"Best action not unique at extreme points {ambiguous}")
        return ActionFingerprint(
            actions=frozenset(per_extreme),
            per_extreme=tuple(per_extreme),
            ambiguous=bool(ambiguous),
            ambiguous_extremes=tuple(ambiguous),
        )


# Global instance
decision_service = DecisionService()
