"""Tests for decision problems and best actions."""

import numpy as np
import pytest

from src.core.exceptions import ArgumentError
from src.models import CredalSet, DecisionProblem, Distribution
from src.services.decision_service import decision_service, lowest_argmax
from src.services.probability_service import probability_service


@pytest.mark.unit
def test_negative_squared_grid(coarse_problem):
    """Test the 0.1 action grid and its utilities."""
    assert coarse_problem.n_actions == 11
    assert coarse_problem.action_value(3) == pytest.approx(0.3)
    assert coarse_problem.utility[3].tolist() == pytest.approx([-0.09, -0.49])


@pytest.mark.unit
def test_problem_needs_two_actions():
    """Test a one-action table is rejected."""
    with pytest.raises(ArgumentError):
        DecisionProblem.from_table([[1.0, 0.0]])


@pytest.mark.unit
def test_utilities_must_be_finite():
    """Test infinite utilities are rejected."""
    with pytest.raises(ArgumentError):
        DecisionProblem.from_table([[1.0, np.inf], [0.0, 1.0]])


@pytest.mark.unit
def test_best_action_is_nearest_grid_point(neg_squared):
    """Test the squared-loss best action equals the belief's mean."""
    best = decision_service.best_action(neg_squared, Distribution.bernoulli(0.37))
    assert best.action_value == pytest.approx(0.37)
    assert best.unique


@pytest.mark.unit
def test_tie_goes_to_lowest_index(coarse_problem):
    """Test a midpoint belief ties and takes the lower action."""
    best = decision_service.best_action(coarse_problem, Distribution.bernoulli(0.05))
    assert best.index == 0
    assert not best.unique


@pytest.mark.unit
def test_best_action_accepts_raw_vectors(coarse_problem):
    """Test beliefs may be plain probability vectors."""
    assert decision_service.best_action(coarse_problem, [0.5, 0.5]).index == 5


@pytest.mark.unit
def test_affine_rescaling_keeps_the_action(coarse_problem):
    """Test a positive affine utility change keeps the best action."""
    belief = Distribution.bernoulli(0.72)
    original = decision_service.best_action(coarse_problem, belief)
    rescaled = decision_service.best_action(coarse_problem.rescaled(3.0, 2.0), belief)
    assert original.index == rescaled.index


@pytest.mark.unit
def test_dominated_action_only_wins_ties(rng):
    """Test a weakly dominated action is chosen only when tied with its dominator."""
    for trial in range(1000):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 6))
        table = rng.uniform(-1.0, 1.0, size=(m, n))
        dominant, dominated = (int(i) for i in rng.choice(m, size=2, replace=False))
        table[dominated] = table[dominant] - rng.uniform(0.0, 1.0, size=n) * (rng.random(n) < 0.5)
        problem = DecisionProblem.from_table(table)
        if trial % 4 == 0:
            belief = np.eye(n)[int(rng.integers(n))]
        else:
            belief = probability_service.sample_simplex(rng, n)

        best = decision_service.best_action(problem, belief)
        if best.index == dominated:
            expected = decision_service.expected_utilities(problem, belief)
            assert not best.unique
            assert expected[dominant] >= best.value - 1e-12


@pytest.mark.unit
def test_expected_utilities_dimension_mismatch(coarse_problem):
    """Test beliefs must match the problem's outcomes."""
    with pytest.raises(ArgumentError):
        decision_service.expected_utilities(coarse_problem, [0.2, 0.3, 0.5])


@pytest.mark.unit
def test_lowest_argmax_rows():
    """Test row-wise argmax with tie flags."""
    indices, unique = lowest_argmax(np.array([[1.0, 2.0, 2.0], [3.0, 1.0, 0.0]]))
    assert indices.tolist() == [1, 0]
    assert unique.tolist() == [False, True]


@pytest.mark.unit
def test_grid_points_have_unique_actions(neg_squared):
    """Test every belief on the 0.02 grid has a unique best action."""
    assert decision_service.certify_unique_argmax(neg_squared, 0.02)


@pytest.mark.unit
def test_midpoints_are_ties(neg_squared):
    """Test beliefs halfway between grid actions tie."""
    assert not decision_service.certify_unique_argmax(neg_squared, 0.01, offset=0.005)
    ties = decision_service.tied_beliefs(neg_squared, 0.01, offset=0.005)
    assert ties[0] == pytest.approx([0.995, 0.005])


@pytest.mark.unit
def test_constant_problem_is_never_unique():
    """Test identical actions always tie."""
    problem = DecisionProblem.from_table([[1.0, 1.0], [1.0, 1.0]])
    assert not decision_service.certify_unique_argmax(problem, 0.1)


@pytest.mark.unit
def test_three_outcome_grid():
    """Test the 0.1 grid on three outcomes."""
    assert decision_service.belief_grid(3, 0.1).shape == (66, 3)


@pytest.mark.unit
def test_sweep_step_out_of_range(neg_squared):
    """Test the sweep needs a step of at most 0.1."""
    with pytest.raises(ArgumentError):
        decision_service.certify_unique_argmax(neg_squared, 0.2)


@pytest.mark.unit
def test_interval_fingerprint(neg_squared, default_belief):
    """Test [0.4, 0.6] maps to actions 0.4 and 0.6."""
    fingerprint = decision_service.action_fingerprint(neg_squared, default_belief)
    assert fingerprint.values(neg_squared) == pytest.approx([0.4, 0.6])
    assert not fingerprint.ambiguous


@pytest.mark.unit
def test_precise_fingerprint(neg_squared, precise_half):
    """Test a precise belief has one action."""
    fingerprint = decision_service.action_fingerprint(neg_squared, precise_half)
    assert fingerprint.values(neg_squared) == pytest.approx([0.5])


@pytest.mark.unit
def test_fingerprint_flags_ambiguous_extreme(coarse_problem):
    """Test an extreme point on a tie is flagged."""
    fingerprint = decision_service.action_fingerprint(coarse_problem, CredalSet.interval(0.05, 0.5))
    assert fingerprint.ambiguous
    assert fingerprint.ambiguous_extremes == (0,)


@pytest.mark.unit
def test_fingerprint_values_need_a_grid(default_belief):
    """Test numeric fingerprint values need grid actions."""
    problem = DecisionProblem.from_table([[1.0, 0.0], [0.0, 1.0]])
    fingerprint = decision_service.action_fingerprint(problem, default_belief)
    with pytest.raises(ArgumentError):
        fingerprint.values(problem)


@pytest.mark.unit
def test_non_equivalent_intervals_have_distinct_fingerprints(neg_squared, rng):
    """Test different grid intervals map to different action sets on the 0.01 action grid."""
    compared = 0
    for _ in range(200):
        first, second = (CredalSet.interval(*(np.sort(rng.integers(0, 101, size=2)) / 100)) for _ in range(2))
        if probability_service.credal_equivalent(first, second):
            continue
        compared += 1
        assert (
            decision_service.action_fingerprint(neg_squared, first).actions
            != decision_service.action_fingerprint(neg_squared, second).actions
        )
    assert compared >= 100
