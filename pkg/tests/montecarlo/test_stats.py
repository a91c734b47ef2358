import math

import pytest

from vlsfbec.exceptions import SimulationError
from vlsfbec.montecarlo import (
    SimReport,
    clopper_pearson,
    compare_error_rate,
    compare_full_rank,
    compare_proportion,
    compare_to_analytic,
    sample_moments,
)
from vlsfbec.types import MessagePolicy, Scheme


def make_report(trials, tau_sum, tau_sq_sum, errors=0, histograms=None) -> SimReport:
    mean, stderr = sample_moments(trials, tau_sum, tau_sq_sum)
    return SimReport(
        k=2,
        p=0.5,
        scheme=Scheme.ST_RLFC,
        schedule="unbounded",
        message_policy=MessagePolicy.RANDOM,
        seed=1,
        trials=trials,
        tau_sum=tau_sum,
        tau_sq_sum=tau_sq_sum,
        mean_tau=mean,
        stderr_tau=stderr,
        errors=errors,
        error_rate=errors / trials,
        error_ci=clopper_pearson(errors, trials),
        undetected_errors=0,
        rank_histograms=histograms or {},
    )


class TestSampleMoments:
    def test_constant_sample(self):
        assert sample_moments(3, 6, 12) == (2.0, 0.0)

    def test_two_values(self):
        mean, stderr = sample_moments(2, 3, 5)
        assert mean == 1.5
        assert stderr == pytest.approx(0.5)

    def test_single_trial(self):
        assert sample_moments(1, 7, 49) == (7.0, 0.0)

    def test_large_constant_sample_is_exact(self):
        n = 10**6
        assert sample_moments(n, 3 * n, 9 * n)[1] == 0.0

    def test_no_trials(self):
        with pytest.raises(SimulationError):
            sample_moments(0, 0, 0)


class TestClopperPearson:
    def test_no_successes(self):
        lower, upper = clopper_pearson(0, 10)
        assert lower == 0.0
        assert upper == pytest.approx(1 - 0.025 ** (1 / 10))

    def test_all_successes(self):
        lower, upper = clopper_pearson(10, 10)
        assert lower == pytest.approx(0.025 ** (1 / 10))
        assert upper == 1.0

    def test_contains_estimate(self):
        lower, upper = clopper_pearson(37, 100, 0.99)
        assert lower < 0.37 < upper

    def test_wider_at_higher_confidence(self):
        narrow = clopper_pearson(50, 200, 0.9)
        wide = clopper_pearson(50, 200, 0.9999)
        assert wide[0] < narrow[0] and narrow[1] < wide[1]

    @pytest.mark.parametrize(
        "successes, trials, confidence", [(11, 10, 0.95), (-1, 10, 0.95), (1, 0, 0.95), (1, 10, 1.0)]
    )
    def test_invalid(self, successes, trials, confidence):
        with pytest.raises(SimulationError):
            clopper_pearson(successes, trials, confidence)


class TestCompareToAnalytic:
    def test_needs_enough_trials(self):
        report = make_report(999, 2 * 999, 4 * 999)
        with pytest.raises(SimulationError, match="1000"):
            compare_to_analytic(report, 2.0)

    def test_constant_sample_matches(self):
        report = make_report(1000, 2000, 4000)
        result = compare_to_analytic(report, 2.0)
        assert result.z_score == 0.0
        assert result.passed
        assert result.status == "pass"

    def test_constant_sample_mismatch(self):
        report = make_report(1000, 2000, 4000)
        result = compare_to_analytic(report, 2.5)
        assert result.z_score == -math.inf
        assert not result.passed
        assert result.status == "fail"
        assert "every trial stopped at 2" in result.diagnostic

    def test_z_score(self):
        # half the trials stop at 1, half at 3: mean 2, sd 1
        report = make_report(1000, 2000, 5000)
        stderr = report.stderr_tau
        assert compare_to_analytic(report, 2.0 + 3 * stderr).passed
        far = compare_to_analytic(report, 2.0 + 10 * stderr)
        assert far.z_score == pytest.approx(-10.0)
        assert not far.passed
        assert "exceeds 4" in far.diagnostic

    def test_custom_threshold(self):
        report = make_report(1000, 2000, 5000)
        assert not compare_to_analytic(report, 2.0 + 3 * report.stderr_tau, threshold=2.0).passed


class TestCompareProportion:
    def test_inside_interval(self):
        result = compare_proportion("x", 50, 100, 0.5)
        assert result.passed
        assert result.interval[0] < 0.5 < result.interval[1]
        assert result.z_score == 0.0

    def test_outside_interval(self):
        result = compare_proportion("x", 50, 100, 0.9)
        assert not result.passed
        assert "outside" in result.diagnostic

    def test_degenerate_analytic(self):
        assert compare_proportion("x", 0, 1000, 0.0).passed
        assert not compare_proportion("x", 3, 1000, 0.0).passed


def test_compare_full_rank():
    report = make_report(1000, 3000, 10000, histograms={4: [100, 300, 600]})
    result = compare_full_rank(report, 4, 0.6)
    assert result.name == "full_rank@4"
    assert result.measured == 0.6
    assert result.passed
    with pytest.raises(SimulationError, match="n=5"):
        compare_full_rank(report, 5, 0.6)


def test_compare_error_rate():
    report = make_report(2000, 6000, 20000, errors=20)
    assert compare_error_rate(report, 0.01).passed
    assert not compare_error_rate(report, 0.05).passed
