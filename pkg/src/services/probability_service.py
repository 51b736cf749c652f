"""Probability service.

Mixtures, extreme points of finitely generated credal sets, credal
equivalence and expected-value ranges over a credal set.
"""

import itertools
import logging
from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import nnls

from src.core.config import settings
from src.core.exceptions import ArgumentError
from src.models.probability import CredalSet, Distribution, OutcomeSpace, UtilityRange

logger = logging.getLogger(__name__)


class ProbabilityService:
    """Service for distribution and credal-set operations."""

    @staticmethod
    def mixture(weights: ArrayLike, dists: Sequence[Distribution]) -> Distribution:
        """
        Convex combination sum_i weights_i * dists_i.

        Renormalizes only to absorb floating-point error.

        Raises:
            ArgumentError: On length mismatch, off-simplex weights or mixed spaces
        """
        weights = np.asarray(weights, dtype=np.float64)
        if weights.ndim != 1 or weights.shape[0] != len(dists) or not dists:
            raise ArgumentError(
                f"{weights.shape[0] if weights.ndim == 1 else weights.shape} weights for {len(dists)} distributions"
            )
        tolerance = settings.PROBABILITY_TOLERANCE
        if np.any(weights < -tolerance) or abs(float(weights.sum()) - 1.0) > 10 * tolerance:
            raise ArgumentError("Mixture weights must lie on the simplex", data={"weights": weights.tolist()})
        space = dists[0].space
        if any(d.space != space for d in dists):
            raise ArgumentError("Mixed distributions must share one outcome space")

        probs = np.clip(weights, 0.0, None) @ np.vstack([d.probs for d in dists])
        probs = np.clip(probs, 0.0, None)
        return Distribution(probs / probs.sum(), space)

    @staticmethod
    def is_convex_combination(
        point: NDArray[np.float64],
        others: NDArray[np.float64],
        tolerance: float | None = None,
    ) -> bool:
        """
        Whether `point` is a convex combination of the rows of `others`.

        Solves non-negative least squares on the system augmented with a row
        of ones, so that a zero residual means simplex weights exist.
        """
        if others.shape[0] == 0:
            return False
        tol = settings.EXTREME_POINT_TOLERANCE if tolerance is None else tolerance
        A = np.vstack([others.T, np.ones((1, others.shape[0]))])
        b = np.concatenate([point, [1.0]])
        _, residual = nnls(A, b)
        return bool(residual <= tol)

    @staticmethod
    def unique_generators(credal: CredalSet) -> list[Distribution]:
        """Generators with duplicates (L-infinity <= tolerance) removed, first kept."""
        unique: list[Distribution] = []
        for g in credal.generators:
            if not any(g.is_close(u) for u in unique):
                unique.append(g)
        return unique

    @staticmethod
    def extreme_points(credal: CredalSet) -> list[Distribution]:
        """
        Minimal subset E of the generators with co(E) = co(generators).

        A generator is dropped iff convex weights over the other generators
        reproduce it. The result is sorted by `Distribution.sort_key`.
        """
        unique = ProbabilityService.unique_generators(credal)
        if len(unique) == 1:
            return unique

        matrix = np.vstack([u.probs for u in unique])
        extremes = []
        for i, candidate in enumerate(unique):
            others = np.delete(matrix, i, axis=0)
            if not ProbabilityService.is_convex_combination(candidate.probs, others):
                extremes.append(candidate)

        logger.debug(f"{len(extremes)} extreme points among {len(credal.generators)} generators")
        return sorted(extremes, key=Distribution.sort_key)

    @staticmethod
    def credal_equivalent(a: CredalSet, b: CredalSet) -> bool:
        """
        Whether two credal sets have the same convex hull.

        Compares extreme-point sets, matching points pairwise within the
        equality tolerance.

        Raises:
            ArgumentError: If the outcome spaces differ
        """
        if a.space != b.space:
            raise ArgumentError("Credal sets live on different outcome spaces")
        ext_a, ext_b = a.extremes, b.extremes
        if len(ext_a) != len(ext_b):
            return False
        return all(any(p.is_close(q) for q in ext_b) for p in ext_a) and all(
            any(q.is_close(p) for p in ext_a) for q in ext_b
        )

    @staticmethod
    def precise_equivalent(p: Distribution, q: Distribution) -> bool:
        """{p} and {q} are equivalent iff p = q."""
        return ProbabilityService.credal_equivalent(CredalSet.singleton(p), CredalSet.singleton(q))

    @staticmethod
    def utility_range(belief: CredalSet, score_values: ArrayLike) -> UtilityRange:
        """
        Minimum and maximum of E_p[score] over the credal set.

        Both are attained at extreme points, so only those are evaluated.
        """
        values = np.asarray(score_values, dtype=np.float64)
        if values.shape != (belief.space.size,):
            raise ArgumentError(f"Score vector of shape {values.shape} for {belief.space.size} outcomes")
        expectations = [p.expectation(values) for p in belief.extremes]
        return UtilityRange(min(expectations), max(expectations))

    @staticmethod
    def simplex_grid(n: int, step: float) -> NDArray[np.float64]:
        """All points of the n-simplex whose coordinates are multiples of `step`."""
        parts = int(round(1.0 / step))
        if parts < 1 or abs(parts * step - 1.0) > 1e-9:
            raise ArgumentError("step must divide 1", data={"step": step})
        rows = [
            np.diff((0, *cuts, parts)) / parts
            for cuts in itertools.combinations_with_replacement(range(parts + 1), n - 1)
        ]
        return np.array(rows[::-1])

    @staticmethod
    def sample_simplex(rng: np.random.Generator, n: int, size: int | None = None) -> NDArray[np.float64]:
        """Symmetric Dirichlet(1) draws on the n-simplex."""
        return rng.dirichlet(np.ones(n), size=size)

    @staticmethod
    def sample_distribution(rng: np.random.Generator, space: OutcomeSpace) -> Distribution:
        probs = ProbabilityService.sample_simplex(rng, space.size)
        return Distribution(probs / probs.sum(), space)

    @staticmethod
    def sample_credal_set(rng: np.random.Generator, space: OutcomeSpace, generators: int) -> CredalSet:
        return CredalSet(tuple(ProbabilityService.sample_distribution(rng, space) for _ in range(generators)))


# Global instance
probability_service = ProbabilityService()
