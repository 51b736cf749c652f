"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from src.models import AggregationRule, CredalSet, DecisionProblem, Distribution, OutcomeSpace, TailoredRule


@pytest.fixture
def binary() -> OutcomeSpace:
    return OutcomeSpace.binary()


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so sampled checks are reproducible."""
    return np.random.default_rng(12345)


@pytest.fixture
def default_belief() -> CredalSet:
    """The imprecise forecast [0.4, 0.6]."""
    return CredalSet.interval(0.4, 0.6)


@pytest.fixture
def precise_half() -> CredalSet:
    return CredalSet.singleton(Distribution.bernoulli(0.5))


@pytest.fixture
def neg_squared() -> DecisionProblem:
    """u(a, o) = -(o - a)^2 on the 0.01 action grid."""
    return DecisionProblem.negative_squared(0.01)


@pytest.fixture
def coarse_problem() -> DecisionProblem:
    """u(a, o) = -(o - a)^2 on the 0.1 action grid."""
    return DecisionProblem.negative_squared(0.1)


@pytest.fixture
def dictator_rule(neg_squared: DecisionProblem) -> TailoredRule:
    return TailoredRule(neg_squared, AggregationRule.mixing(0.5))


@pytest.fixture
def minmax_rule(neg_squared: DecisionProblem) -> TailoredRule:
    return TailoredRule(neg_squared, AggregationRule.egalitarian())
