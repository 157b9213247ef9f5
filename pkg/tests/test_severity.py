import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from benfordsev.asymptotics import build_constants, mad_moments
from benfordsev.benford import Proportions, benford_probs
from benfordsev.digits import DigitCounts, FIRST_DIGIT, FIRST_TWO_DIGITS
from benfordsev.severity import (
    CalibrationConfig,
    CalibrationWarning,
    Claim,
    SmallSampleWarning,
    chi_square_severity,
    default_delta_star,
    delta_star,
    generic_normal_severity,
    n_min_for,
    run_test,
    run_test_from_proportions,
    severity_of_acceptance,
    severity_of_rejection,
)
from benfordsev.specialfn import central_chi2_cdf, std_normal_cdf


class TestRunTest:
    def test_exact_law_gives_negative_statistic(self):
        b = benford_probs(FIRST_DIGIT)
        outcome = run_test_from_proportions(Proportions(p=b.b.copy(), n=5000), FIRST_DIGIT)
        assert outcome.mad == 0.0
        assert outcome.excess_delta == -mad_moments(FIRST_DIGIT, 5000).mean
        assert outcome.tilde_delta < 0.0
        assert outcome.p_value > 0.5

    def test_statistic_identity(self):
        counts = DigitCounts(system=FIRST_DIGIT, counts=(300, 170, 130, 99, 81, 70, 60, 50, 40), n=1000)
        outcome = run_test(counts)
        c = build_constants(FIRST_DIGIT)
        expected = 9.0 * math.sqrt(1000) * outcome.excess_delta / math.sqrt(c.quad_form)
        assert abs(outcome.tilde_delta - expected) <= 1e-12
        assert outcome.p_value == 1.0 - std_normal_cdf(outcome.tilde_delta)

    def test_counts_and_proportions_routes_agree(self):
        counts = DigitCounts(system=FIRST_DIGIT, counts=(300, 170, 130, 99, 81, 70, 60, 50, 40), n=1000)
        p = Proportions(p=np.asarray(counts.counts, dtype=float) / counts.n, n=counts.n)
        a = run_test(counts)
        b = run_test_from_proportions(p, FIRST_DIGIT)
        assert a.tilde_delta == b.tilde_delta
        assert a.mad == b.mad

    def test_small_sample_warns(self):
        counts = DigitCounts(system=FIRST_DIGIT, counts=(20, 10, 8, 6, 5, 4, 3, 2, 2), n=60)
        with pytest.warns(SmallSampleWarning):
            run_test(counts)

    def test_empty_sample_rejected(self):
        counts = DigitCounts(system=FIRST_DIGIT, counts=(0,) * 9, n=0)
        with pytest.raises(ValueError):
            run_test(counts)


class TestGenericNormalSeverity:
    def test_mean_shift_example_small_sample(self):
        # statistic 2, benchmark mean 0.2, sigma 2: ncp = sqrt(n) * 0.1
        assert generic_normal_severity(2.0, math.sqrt(100) * 0.1) == pytest.approx(0.841, abs=1e-3)

    def test_mean_shift_example_large_sample(self):
        assert generic_normal_severity(2.0, math.sqrt(1000) * 0.1) == pytest.approx(0.123, abs=1e-3)

    def test_zero_ncp_is_p_value_complement(self):
        assert generic_normal_severity(1.7, 0.0) == std_normal_cdf(1.7)


class TestSeverityOfRejection:
    @pytest.mark.parametrize(
        "tilde,n,system,expected,tol",
        [
            (6.621, 19451, FIRST_DIGIT, 0.41628, 2e-3),
            (3.065, 19509, FIRST_DIGIT, 0.00008, 5e-5),
            (15.591, 15194, FIRST_TWO_DIGITS, 1.00000, 1e-5),
        ],
    )
    def test_published_benchmark_rows(self, tilde, n, system, expected, tol):
        ds = default_delta_star(system)
        result = severity_of_rejection(tilde, ds, n, system)
        assert result.severity == pytest.approx(expected, abs=tol)
        assert result.claim is Claim.DISCREPANCY_EXCEEDS

    def test_zero_benchmark_equals_p_value_complement(self):
        result = severity_of_rejection(2.3, 0.0, 1000, FIRST_DIGIT)
        assert result.severity == std_normal_cdf(2.3)

    def test_noncentrality_formula(self):
        c = build_constants(FIRST_DIGIT)
        result = severity_of_rejection(1.0, 0.004, 2500, FIRST_DIGIT)
        assert result.noncentrality == pytest.approx(
            9 * 50 * 0.004 / math.sqrt(c.quad_form), rel=1e-12
        )

    def test_decreasing_in_delta_star(self):
        values = [
            severity_of_rejection(3.0, ds, 10000, FIRST_DIGIT).severity
            for ds in (0.0, 0.001, 0.00321, 0.006, 0.01)
        ]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_decreasing_in_n(self):
        # The large-sample lesson: the same statistic supports a weaker
        # discrepancy claim as n grows.
        values = [
            severity_of_rejection(2.0, 0.00321, n, FIRST_DIGIT).severity
            for n in (100, 1000, 10000, 100000)
        ]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_negative_benchmark_rejected(self):
        with pytest.raises(ValueError):
            severity_of_rejection(1.0, -0.001, 100, FIRST_DIGIT)


class TestSeverityOfAcceptance:
    @given(
        st.floats(min_value=-10.0, max_value=10.0),
        st.floats(min_value=0.0, max_value=0.05),
        st.integers(min_value=1, max_value=10**6),
    )
    @settings(max_examples=60)
    def test_complementarity_exact(self, tilde, ds, n):
        rejection = severity_of_rejection(tilde, ds, n, FIRST_DIGIT)
        acceptance = severity_of_acceptance(tilde, ds, n, FIRST_DIGIT)
        assert rejection.severity + acceptance.severity == 1.0
        assert acceptance.claim is Claim.DISCREPANCY_AT_MOST

    def test_nonrejection_row_accepts_with_high_severity(self):
        result = severity_of_acceptance(1.018, 0.00037, 19509, FIRST_TWO_DIGITS)
        assert result.severity == pytest.approx(1.0, abs=1e-4)

    def test_large_n_at_zero_statistic(self):
        result = severity_of_acceptance(0.0, 0.00321, 10**7, FIRST_DIGIT)
        assert result.severity == pytest.approx(1.0, abs=1e-12)


class TestNMin:
    def test_expected_count_five(self):
        assert n_min_for(FIRST_DIGIT, 5.0) == 110
        assert n_min_for(FIRST_TWO_DIGITS, 5.0) == 1146

    def test_expected_count_one(self):
        assert n_min_for(FIRST_DIGIT, 1.0) == 22

    def test_minimality(self):
        min_b = benford_probs(FIRST_TWO_DIGITS).b.min()
        n = n_min_for(FIRST_TWO_DIGITS, 5.0)
        assert n * min_b >= 5.0 > (n - 1) * min_b

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            n_min_for(FIRST_DIGIT, 0.0)


class TestDeltaStar:
    def test_first_digit_calibration(self):
        config = CalibrationConfig(system=FIRST_DIGIT, threshold=0.006, n_min=110, n_max=25000)
        assert delta_star(config) == pytest.approx(0.00321, abs=5e-5)

    def test_first_two_calibration(self):
        config = CalibrationConfig(
            system=FIRST_TWO_DIGITS, threshold=0.0012, n_min=1146, n_max=25000
        )
        assert delta_star(config) == pytest.approx(0.00037, abs=2e-5)

    def test_threshold_at_average_mean_gives_zero(self):
        import warnings

        means = [mad_moments(FIRST_DIGIT, n).mean for n in range(110, 25001)]
        config = CalibrationConfig(
            system=FIRST_DIGIT, threshold=sum(means) / len(means), n_min=110, n_max=25000
        )
        with warnings.catch_warnings():
            # the result may land a few ulps below zero and warn
            warnings.simplefilter("ignore", CalibrationWarning)
            assert delta_star(config) == pytest.approx(0.0, abs=1e-12)

    def test_monotone_in_threshold(self):
        lo = delta_star(CalibrationConfig(FIRST_DIGIT, 0.004, 110, 25000))
        hi = delta_star(CalibrationConfig(FIRST_DIGIT, 0.008, 110, 25000))
        assert lo < hi

    def test_decreasing_in_n_min(self):
        early = delta_star(CalibrationConfig(FIRST_DIGIT, 0.006, 110, 25000))
        late = delta_star(CalibrationConfig(FIRST_DIGIT, 0.006, 5000, 25000))
        assert late > early  # dropping the small-n (large E(MAD)) part raises the average

    def test_negative_value_warns(self):
        config = CalibrationConfig(system=FIRST_DIGIT, threshold=0.0001, n_min=110, n_max=200)
        with pytest.warns(CalibrationWarning):
            value = delta_star(config)
        assert value < 0.0

    def test_default_config(self):
        config = CalibrationConfig.default(FIRST_DIGIT)
        assert (config.threshold, config.n_min, config.n_max) == (0.006, 110, 25000)
        assert delta_star(config) == pytest.approx(default_delta_star(FIRST_DIGIT), abs=5e-5)

    def test_invalid_range_rejected(self):
        with pytest.raises(ValueError):
            CalibrationConfig(system=FIRST_DIGIT, threshold=0.006, n_min=200, n_max=100)


class TestChiSquareSeverity:
    def test_zero_benchmark_is_central_cdf(self):
        result = chi_square_severity(12.0, 0.0, FIRST_DIGIT)
        assert result.severity == pytest.approx(central_chi2_cdf(12.0, 8), rel=1e-12)

    def test_zero_statistic_has_zero_severity(self):
        for psi_star in (0.0, 5.0, 50.0):
            assert chi_square_severity(0.0, psi_star, FIRST_DIGIT).severity == 0.0

    def test_monotone_decreasing_in_benchmark(self):
        values = [
            chi_square_severity(30.0, ps, FIRST_DIGIT).severity for ps in (0.0, 5.0, 10.0, 20.0)
        ]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            chi_square_severity(-1.0, 5.0, FIRST_DIGIT)
        with pytest.raises(ValueError):
            chi_square_severity(1.0, -5.0, FIRST_DIGIT)


class TestDeltaStarMonotoneSeverityGrid:
    def test_severity_against_expanding_delta_grid(self):
        # Spot-check both digit schemes on a dense grid.
        for system in (FIRST_DIGIT, FIRST_TWO_DIGITS):
            grid = np.linspace(0.0, 0.02, 41)
            sev = [severity_of_rejection(4.0, ds, 15000, system).severity for ds in grid]
            assert all(a >= b for a, b in zip(sev, sev[1:]))
