"""Full-resolution properness runs on the 0.01 report grid."""

import pytest

from src.schemas.config import RunConfig
from src.tasks.verification_tasks import run_impossibility, run_verify


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.parametrize("mode", ["dictator", "minmax", "randomized"])
def test_default_panels(mode):
    """Belief [0.4, 0.6]: only randomization over all lambdas is strictly proper."""
    result = run_verify(RunConfig(mode=mode))
    assert result["status"] == "success"
    assert result["n_reports"] == 5151
    assert result["is_proper"]
    if mode == "randomized":
        assert result["argmax"] == [[0.4, 0.6]]
    else:
        assert [0.5, 0.5] in result["argmax"]


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.parametrize(
    ("belief", "support"),
    [
        ((0.4, 0.6), (0.48, 0.52)),
        ((0.46, 0.54), (0.45, 0.55)),
        ((0.48, 0.52), (0.4, 0.6)),
    ],
)
def test_truncated_theta_is_not_strict(belief, support):
    """A theta that misses part of [0, 1] leaves misreports tied with the truth."""
    config = RunConfig.model_validate(
        {"belief": {"interval": list(belief)}, "theta": {"lower": support[0], "upper": support[1]}}
    )
    result = run_verify(config)
    assert result["status"] == "failed"
    assert result["is_proper"]
    assert not result["is_strict"]
    assert len(result["argmax"]) > 1


@pytest.mark.slow
@pytest.mark.integration
def test_impossibility_at_full_size():
    """Test 10000 random tables find no proper non-constant score on the default lattice."""
    result = run_impossibility(RunConfig())
    assert result["status"] == "success"
    assert result["random_tables"] == 10_000
    assert result["proper_nonconstant_count"] == 0


@pytest.mark.slow
@pytest.mark.integration
def test_wide_truncation_stays_strict_on_default_belief():
    """Test theta on [0.45, 0.55] still singles out [0.4, 0.6] on the 0.01 grid."""
    config = RunConfig.model_validate({"theta": {"lower": 0.45, "upper": 0.55}})
    result = run_verify(config)
    assert result["status"] == "success"
    assert result["is_strict"]
    assert result["argmax"] == [[0.4, 0.6]]
