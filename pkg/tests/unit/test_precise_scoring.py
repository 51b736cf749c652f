"""Tests for precise scoring rules."""

import math

import numpy as np
import pytest

from src.core.exceptions import ArgumentError
from src.models import Distribution, OutcomeSpace, PreciseScoringRule
from src.services.precise_scoring_service import precise_scoring_service
from src.services.probability_service import probability_service

BINARY_REPORTS = [Distribution.bernoulli(float(x)) for x in np.linspace(0.0, 1.0, 101)]


def _shifted_potential(rule: PreciseScoringRule, offsets: list[float], factor: float) -> PreciseScoringRule:
    """G -> factor * G + <offsets, q>, whose score is factor * s + offsets[o]."""
    shift = np.asarray(offsets)
    return PreciseScoringRule.from_potential(
        lambda q: factor * rule.potential(q) + float(np.dot(shift, q)),
        lambda q: factor * np.asarray(rule.subgradient(q)) + shift,
        name=f"shifted_{rule.name}",
    )


def _best_report(rule: PreciseScoringRule, belief: Distribution) -> int:
    values = [precise_scoring_service.expected_score(rule, q, belief) for q in BINARY_REPORTS]
    return int(np.argmax(values))


@pytest.mark.unit
def test_logarithmic_score():
    """Test the log score of a likely outcome."""
    rule = PreciseScoringRule.logarithmic()
    assert precise_scoring_service.score(rule, Distribution.bernoulli(0.7), 1) == pytest.approx(math.log(0.7))


@pytest.mark.unit
def test_logarithmic_score_of_ruled_out_outcome():
    """Test the log score is -inf on an outcome the report rules out."""
    rule = PreciseScoringRule.logarithmic()
    assert precise_scoring_service.score(rule, Distribution.bernoulli(1.0), 0) == -math.inf


@pytest.mark.unit
def test_quadratic_score():
    """Test the quadratic score 2 q_o - |q|^2."""
    rule = PreciseScoringRule.quadratic()
    # 2 * 0.7 - (0.49 + 0.09)
    assert precise_scoring_service.score(rule, Distribution.bernoulli(0.7), 1) == pytest.approx(0.82)


@pytest.mark.unit
def test_offsets_and_scale():
    """Test a_o + b * base score."""
    rule = PreciseScoringRule.quadratic(offsets=[1.0, 2.0], scale=3.0)
    assert precise_scoring_service.score(rule, Distribution.bernoulli(0.7), 1) == pytest.approx(2.0 + 3.0 * 0.82)


@pytest.mark.unit
def test_brier_is_negated_squared_error():
    """Test the Brier rule is minus the squared distance to the outcome vertex."""
    q = Distribution.of([0.2, 0.5, 0.3])
    rule = PreciseScoringRule.brier(3)
    expected = -((0.2 - 0) ** 2 + (0.5 - 1) ** 2 + (0.3 - 0) ** 2)
    assert precise_scoring_service.score(rule, q, 1) == pytest.approx(expected)


@pytest.mark.unit
def test_constant_score():
    """Test the constant rule ignores the report."""
    rule = PreciseScoringRule.constant_rule(2.5)
    assert precise_scoring_service.score_vector(rule, Distribution.bernoulli(0.3)).tolist() == [2.5, 2.5]


@pytest.mark.unit
def test_expected_log_score_of_point_mass():
    """Test 0 * (-inf) = 0 in expected scores."""
    rule = PreciseScoringRule.logarithmic()
    report = Distribution.bernoulli(1.0)
    assert precise_scoring_service.expected_score(rule, report, report) == 0.0
    assert precise_scoring_service.expected_score(rule, report, Distribution.bernoulli(0.5)) == -math.inf


@pytest.mark.unit
def test_score_outcome_out_of_range():
    """Test scoring an unknown outcome raises."""
    with pytest.raises(ArgumentError):
        precise_scoring_service.score(PreciseScoringRule.quadratic(), Distribution.bernoulli(0.5), 2)


@pytest.mark.unit
def test_scale_must_be_positive():
    """Test b must be positive."""
    with pytest.raises(ArgumentError):
        PreciseScoringRule.quadratic(scale=0.0)


@pytest.mark.unit
@pytest.mark.parametrize("rule", [PreciseScoringRule.logarithmic(), PreciseScoringRule.quadratic()])
def test_classical_rules_are_strictly_proper(rule):
    """Test no sampled misreport reaches the truthful expected score."""
    report = precise_scoring_service.verify_strict_properness(rule, 10_000, rng_seed=7, outcome_sizes=(2, 3, 4, 5))
    assert report.is_strict
    assert report.trials == 10_000


@pytest.mark.unit
def test_constant_rule_ties_everywhere():
    """Test every pair violates strictness and the report is capped."""
    report = precise_scoring_service.verify_strict_properness(
        PreciseScoringRule.constant_rule(1.0), 100, rng_seed=0, max_reported=5
    )
    assert not report.is_strict
    assert len(report.violations) == 5


@pytest.mark.unit
def test_linear_potential_is_not_strict():
    """Test a linear potential gives a weakly proper rule."""
    rule = PreciseScoringRule.linear_potential([0.0, 1.0])
    report = precise_scoring_service.verify_strict_properness(rule, 50, rng_seed=1)
    assert not report.is_strict


@pytest.mark.unit
def test_strictness_check_needs_a_trial():
    """Test zero trials raises."""
    with pytest.raises(ArgumentError):
        precise_scoring_service.verify_strict_properness(PreciseScoringRule.quadratic(), 0, rng_seed=0)


@pytest.mark.unit
@pytest.mark.parametrize(("offsets", "factor"), [([0.7, -1.3], 2.5), ([3.0, 0.0], 0.4)])
@pytest.mark.parametrize(
    ("plain", "transformed"),
    [
        (PreciseScoringRule.logarithmic, lambda o, f: PreciseScoringRule.logarithmic(offsets=o, scale=f)),
        (PreciseScoringRule.quadratic, lambda o, f: PreciseScoringRule.quadratic(offsets=o, scale=f)),
        (PreciseScoringRule.squared_norm, lambda o, f: _shifted_potential(PreciseScoringRule.squared_norm(), o, f)),
        (
            PreciseScoringRule.negative_entropy,
            lambda o, f: _shifted_potential(PreciseScoringRule.negative_entropy(), o, f),
        ),
    ],
    ids=["logarithmic", "quadratic", "squared_norm", "negative_entropy"],
)
def test_affine_change_keeps_the_best_report(plain, transformed, offsets, factor):
    """Test shifting offsets and scaling b leave the best grid report at the belief."""
    original, changed = plain(), transformed(offsets, factor)
    for i in range(1, 100, 7):
        belief = BINARY_REPORTS[i]
        assert _best_report(original, belief) == i
        assert _best_report(changed, belief) == i


@pytest.mark.unit
@pytest.mark.parametrize(
    "rule",
    [
        PreciseScoringRule.logarithmic(),
        PreciseScoringRule.quadratic(),
        PreciseScoringRule.squared_norm(),
        PreciseScoringRule.negative_entropy(),
    ],
    ids=lambda rule: rule.name,
)
def test_truthful_expected_score_is_convex(rule, rng):
    """Test q -> E_q[s(q)] lies below its chords on random simplex segments."""

    def truthful(q: Distribution) -> float:
        return precise_scoring_service.expected_score(rule, q, q)

    for _ in range(500):
        space = OutcomeSpace.of_size(int(rng.integers(2, 6)))
        p = probability_service.sample_distribution(rng, space)
        q = probability_service.sample_distribution(rng, space)
        t = float(rng.uniform())
        between = probability_service.mixture([t, 1.0 - t], [p, q])
        assert truthful(between) <= t * truthful(p) + (1.0 - t) * truthful(q) + 1e-9
        middle = probability_service.mixture([0.5, 0.5], [p, q])
        assert truthful(middle) <= 0.5 * (truthful(p) + truthful(q)) + 1e-9


@pytest.mark.unit
@pytest.mark.parametrize("rule", [PreciseScoringRule.squared_norm(), PreciseScoringRule.negative_entropy()])
def test_expected_score_is_the_potential(rule):
    """Test E_q[s(q)] = G(q) for constructed rules."""
    assert precise_scoring_service.expected_score_is_G(rule, 1000, rng_seed=3) <= 1e-9


@pytest.mark.unit
@pytest.mark.parametrize("rule", [PreciseScoringRule.squared_norm(), PreciseScoringRule.negative_entropy()])
def test_constructed_rules_are_strictly_proper(rule):
    """Test strictly convex potentials give strictly proper rules."""
    report = precise_scoring_service.verify_strict_properness(rule, 10_000, rng_seed=11, outcome_sizes=(2, 3, 4, 5))
    assert report.is_strict


@pytest.mark.unit
def test_negative_entropy_matches_log_score():
    """Test G(q) = sum q ln q rebuilds the log score."""
    constructed = PreciseScoringRule.negative_entropy()
    q = Distribution.of([0.2, 0.3, 0.5])
    for o in range(3):
        assert precise_scoring_service.score(constructed, q, o) == pytest.approx(math.log(q.probs[o]))


@pytest.mark.unit
def test_squared_norm_matches_quadratic():
    """Test G(q) = |q|^2 rebuilds the quadratic score."""
    q = Distribution.of([0.6, 0.1, 0.3])
    constructed = precise_scoring_service.score_vector(PreciseScoringRule.squared_norm(), q)
    quadratic = precise_scoring_service.score_vector(PreciseScoringRule.quadratic(), q)
    np.testing.assert_allclose(constructed, quadratic, atol=1e-12)


@pytest.mark.unit
def test_boundary_report_scores_minus_infinity():
    """Test an infinite subgradient gives a -inf score."""
    rule = PreciseScoringRule.negative_entropy()
    assert precise_scoring_service.score(rule, Distribution.bernoulli(1.0), 0) == -math.inf


@pytest.mark.unit
def test_only_constructed_rules_carry_a_potential():
    """Test the potential check rejects classical rules."""
    with pytest.raises(ArgumentError):
        precise_scoring_service.expected_score_is_G(PreciseScoringRule.quadratic(), 10)
