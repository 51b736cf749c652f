"""Tests for outcome spaces, distributions and credal sets."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.exceptions import ArgumentError
from src.models import CredalSet, Distribution, OutcomeSpace
from src.services.probability_service import probability_service


def _random_credal_set(rng: np.random.Generator) -> CredalSet:
    space = OutcomeSpace.of_size(int(rng.integers(2, 5)))
    return probability_service.sample_credal_set(rng, space, int(rng.integers(1, 7)))


def _interior_mixture(rng: np.random.Generator, credal: CredalSet) -> Distribution:
    """A mixture putting at least 1/(2k) weight on each of the k extreme points."""
    k = len(credal.extremes)
    weights = 0.5 * probability_service.sample_simplex(rng, k) + 0.5 / k
    return probability_service.mixture(weights, list(credal.extremes))


@pytest.mark.unit
def test_distribution_rejects_wrong_length(binary):
    """Test a distribution must have one entry per outcome."""
    with pytest.raises(ArgumentError):
        Distribution(np.array([0.2, 0.3, 0.5]), binary)


@pytest.mark.unit
def test_distribution_rejects_negative_and_unnormalized(binary):
    """Test negative or unnormalized probabilities are rejected."""
    with pytest.raises(ArgumentError):
        Distribution(np.array([-0.1, 1.1]), binary)
    with pytest.raises(ArgumentError):
        Distribution(np.array([0.3, 0.3]), binary)


@pytest.mark.unit
def test_expectation_ignores_zero_mass_on_minus_infinity():
    """Test 0 * (-inf) counts as 0."""
    p = Distribution.of([1.0, 0.0])
    assert p.expectation([-1.0, -np.inf]) == -1.0


@pytest.mark.unit
def test_probs_are_read_only():
    """Test distributions are immutable."""
    p = Distribution.bernoulli(0.3)
    with pytest.raises(ValueError):
        p.probs[0] = 0.5


@pytest.mark.unit
def test_outcome_space_needs_two_unique_labels():
    """Test outcome spaces reject a single or repeated label."""
    with pytest.raises(ArgumentError):
        OutcomeSpace(("only",))
    with pytest.raises(ArgumentError):
        OutcomeSpace(("a", "a"))


@pytest.mark.unit
def test_mixture_of_bernoullis():
    """Test an even mixture of Bern(0.4) and Bern(0.6)."""
    mixed = probability_service.mixture([0.5, 0.5], [Distribution.bernoulli(0.4), Distribution.bernoulli(0.6)])
    assert mixed.probs == pytest.approx([0.5, 0.5])


@pytest.mark.unit
def test_mixture_degenerate_weights_return_member():
    """Test a vertex weight vector returns that member."""
    members = [Distribution.of([0.2, 0.8]), Distribution.of([0.9, 0.1])]
    assert probability_service.mixture([0.0, 1.0], members).probs == pytest.approx([0.9, 0.1])


@pytest.mark.unit
def test_mixture_weights_off_simplex():
    """Test mixture weights must sum to one."""
    members = [Distribution.bernoulli(0.4), Distribution.bernoulli(0.6)]
    with pytest.raises(ArgumentError):
        probability_service.mixture([0.5, 0.6], members)


@pytest.mark.unit
def test_mixture_length_mismatch():
    """Test mixture needs one weight per distribution."""
    with pytest.raises(ArgumentError):
        probability_service.mixture([1.0], [Distribution.bernoulli(0.4), Distribution.bernoulli(0.6)])


@pytest.mark.unit
def test_interior_generator_dropped():
    """Test a generator inside the hull is not an extreme point."""
    credal = CredalSet.of([[0.4, 0.6], [0.5, 0.5], [0.6, 0.4]])
    assert [e.probs.tolist() for e in credal.extremes] == [[0.6, 0.4], [0.4, 0.6]]


@pytest.mark.unit
def test_duplicate_generators_collapse():
    """Test repeated generators give a precise set."""
    credal = CredalSet.of([[0.3, 0.7], [0.3, 0.7]])
    assert len(credal.extremes) == 1
    assert credal.is_precise


@pytest.mark.unit
def test_triangle_with_centroid():
    """Test the centroid of the simplex is dropped."""
    third = 1.0 / 3.0
    credal = CredalSet.of([[1, 0, 0], [0, 1, 0], [0, 0, 1], [third, third, third]])
    assert len(credal.extremes) == 3


@pytest.mark.unit
def test_extremes_ordered_lower_end_first():
    """Test interval extremes come lower end first."""
    credal = CredalSet.interval(0.2, 0.7)
    assert [float(e.probs[1]) for e in credal.extremes] == pytest.approx([0.2, 0.7])
    assert credal.bounds() == pytest.approx((0.2, 0.7))


@pytest.mark.unit
def test_vacuous_set_is_the_simplex_vertices():
    """Test the vacuous set has one extreme point per outcome."""
    vacuous = CredalSet.vacuous(OutcomeSpace.of_size(3))
    assert len(vacuous.extremes) == 3


@pytest.mark.unit
def test_mixed_spaces_rejected():
    """Test generators must share one outcome space."""
    with pytest.raises(ArgumentError):
        CredalSet((Distribution.bernoulli(0.4), Distribution.of([0.2, 0.3, 0.5])))


@pytest.mark.unit
def test_same_hull_different_generators():
    """Test sets with the same hull are equivalent."""
    a = CredalSet.of([[0.4, 0.6], [0.6, 0.4]])
    b = CredalSet.of([[0.4, 0.6], [0.5, 0.5], [0.6, 0.4]])
    assert probability_service.credal_equivalent(a, b)


@pytest.mark.unit
def test_different_hulls():
    """Test intervals with different ends are not equivalent."""
    assert not probability_service.credal_equivalent(CredalSet.interval(0.4, 0.6), CredalSet.interval(0.4, 0.5))


@pytest.mark.unit
def test_precise_equivalence_is_equality():
    """Test singletons are equivalent exactly when the distributions agree."""
    assert probability_service.precise_equivalent(Distribution.bernoulli(0.3), Distribution.bernoulli(0.3))
    assert not probability_service.precise_equivalent(Distribution.bernoulli(0.3), Distribution.bernoulli(0.31))


@pytest.mark.unit
def test_equivalence_space_mismatch():
    """Test equivalence across outcome spaces raises."""
    with pytest.raises(ArgumentError):
        probability_service.credal_equivalent(CredalSet.interval(0.4, 0.6), CredalSet.vacuous(OutcomeSpace.of_size(3)))


@pytest.mark.unit
def test_adding_a_hull_member_keeps_the_set(rng):
    """Test adding a mixture of the extreme points leaves the set equivalent."""
    for _ in range(300):
        credal = _random_credal_set(rng)
        extended = CredalSet((*credal.generators, _interior_mixture(rng, credal)))
        assert probability_service.credal_equivalent(credal, extended)
        assert probability_service.credal_equivalent(extended, credal)


@pytest.mark.unit
def test_equivalence_is_an_equivalence_relation(rng):
    """Test reflexivity, symmetry and transitivity on sets sharing a hull."""
    equivalent = probability_service.credal_equivalent
    for _ in range(200):
        credal = _random_credal_set(rng)
        shuffled = CredalSet(
            (*(credal.generators[i] for i in rng.permutation(len(credal.generators))), _interior_mixture(rng, credal))
        )
        extremes_only = CredalSet((_interior_mixture(rng, credal), *credal.extremes))
        triple = (credal, shuffled, extremes_only)

        for a in triple:
            assert equivalent(a, a)
        for a in triple:
            for b in triple:
                assert equivalent(a, b) == equivalent(b, a)
                assert equivalent(a, b)

        if len(credal.extremes) > 1:
            smaller = CredalSet(credal.extremes[1:])
            for a in triple:
                assert not equivalent(a, smaller)
                assert not equivalent(smaller, a)


@pytest.mark.unit
def test_equivalence_is_transitive_on_unrelated_sets(rng):
    """Test a ~ b and b ~ c imply a ~ c on binary intervals sharing grid ends."""
    equivalent = probability_service.credal_equivalent
    ends = np.round(np.arange(5) / 4, 12)
    for _ in range(300):
        a, b, c = (CredalSet.of([[1 - x, x] for x in rng.choice(ends, size=3)]) for _ in range(3))
        if equivalent(a, b) and equivalent(b, c):
            assert equivalent(a, c)
        assert equivalent(a, b) == equivalent(b, a)


@pytest.mark.unit
def test_interval_utility_range():
    """Test the utility range over [0.4, 0.6] of the indicator of outcome 1."""
    credal = CredalSet.interval(0.4, 0.6)
    value_range = probability_service.utility_range(credal, [0.0, 1.0])
    assert (value_range.lower, value_range.upper) == pytest.approx((0.4, 0.6))


@pytest.mark.unit
def test_precise_range_is_a_point():
    """Test a precise belief gives a zero-width range."""
    value_range = probability_service.utility_range(CredalSet.singleton(Distribution.bernoulli(0.3)), [2.0, 4.0])
    assert value_range.width == pytest.approx(0.0)
    assert value_range.lower == pytest.approx(2.6)


@pytest.mark.unit
def test_utility_range_shape_mismatch():
    """Test the score vector must match the outcomes."""
    with pytest.raises(ArgumentError):
        probability_service.utility_range(CredalSet.interval(0.4, 0.6), [1.0, 2.0, 3.0])


@pytest.mark.unit
def test_range_attained_at_extremes(rng):
    """Test min and max over all generators are reached by computed extreme points."""
    for _ in range(1000):
        n = int(rng.integers(2, 5))
        space = OutcomeSpace.of_size(n)
        credal = probability_service.sample_credal_set(rng, space, int(rng.integers(1, 7)))
        scores = rng.normal(size=n)
        over_generators = [g.expectation(scores) for g in credal.generators]
        value_range = probability_service.utility_range(credal, scores)
        assert value_range.lower == pytest.approx(min(over_generators), abs=1e-9)
        assert value_range.upper == pytest.approx(max(over_generators), abs=1e-9)


@pytest.mark.unit
@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=6))
def test_interval_generators_reduce_to_two_extremes(points):
    """Test binary generators reduce to their minimum and maximum."""
    credal = CredalSet.of([[1.0 - p, p] for p in points])
    lower, upper = credal.bounds()
    assert lower == pytest.approx(min(points), abs=1e-9)
    assert upper == pytest.approx(max(points), abs=1e-9)
    assert len(credal.extremes) <= 2


@pytest.mark.unit
def test_simplex_grid_counts():
    """Test simplex grid sizes and the step check."""
    assert probability_service.simplex_grid(2, 0.5).tolist() == [[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]]
    assert probability_service.simplex_grid(3, 0.1).shape == (66, 3)
    with pytest.raises(ArgumentError):
        probability_service.simplex_grid(2, 0.3)
