"""Disruption-risk tests."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aitg.disruption import (
    AdriConfig,
    DisruptionError,
    MoatFactors,
    adri,
    classify,
    cumulative_displacement,
    hazard,
    moat,
    urgency_delta,
)


class TestUrgencyDelta:
    def test_baseline(self):
        assert urgency_delta(1.0) == 1.0

    def test_current_calibration(self):
        assert urgency_delta(1.90) == pytest.approx(1.45)

    def test_cap(self):
        assert urgency_delta(3.0) == 1.5

    def test_clamped_below_baseline(self):
        assert urgency_delta(0.8) == 1.0


class TestMoat:
    def test_extremes(self):
        assert moat(MoatFactors(1, 1, 1, 1)) == 1.0
        assert moat(MoatFactors(0, 0, 0, 0)) == 0.0

    def test_mean_oracle(self):
        assert moat(MoatFactors(0.9, 0.9, 0.9, 0.82)) == pytest.approx(0.88)

    def test_weighted(self):
        m = MoatFactors(1.0, 0.0, 0.0, 0.0, weights=(0.7, 0.1, 0.1, 0.1))
        assert moat(m) == pytest.approx(0.7)


class TestAdri:
    def test_zero_gap(self):
        assert adri(0.0, 8.4, 0.5, 1.45) == 0.0

    def test_full_moat(self):
        assert adri(5.58, 8.4, 1.0, 1.45) == 0.0

    def test_arithmetic_oracle(self):
        # inputs chosen to land on the published moderate-risk regional bank
        expected = 5.58 * 8.4 * (1 - 0.225) * 1.45 / 20.25
        assert expected == pytest.approx(2.6, abs=0.1)
        assert adri(5.58, 8.4, 0.225, 1.45) == pytest.approx(expected)

    def test_normalization_maps_max_inputs_to_ten(self):
        assert adri(13.5, 10.0, 0.0, 1.5) == pytest.approx(10.0)

    @given(
        st.floats(min_value=0.0, max_value=13.5),
        st.floats(min_value=0.0, max_value=10.0),
        st.floats(min_value=0.0, max_value=1.0),
        st.floats(min_value=1.0, max_value=1.5),
    )
    @settings(max_examples=300, deadline=None)
    def test_monotonicity_and_bounds(self, g, cadr, m, d):
        v = adri(g, cadr, m, d)
        assert 0.0 <= v <= 10.0
        assert adri(g + 0.1, cadr, m, d) >= v - 1e-12
        assert adri(g, min(cadr + 0.1, 10.0), m, d) >= v - 1e-12
        assert adri(g, cadr, min(m + 0.05, 1.0), d) <= v + 1e-12
        assert adri(g, cadr, m, min(d + 0.01, 1.5)) >= v - 1e-12


class TestHazard:
    def test_five_percent(self):
        assert hazard(5.0) == pytest.approx(0.05)

    def test_zero(self):
        assert hazard(0.0) == 0.0

    def test_linear(self):
        assert hazard(10.0) == pytest.approx(0.10)


class TestCumulativeDisplacement:
    def test_adri_five_24_months(self):
        p = cumulative_displacement(5.0, 24.0)
        assert p == pytest.approx(1.0 - math.exp(-0.1))
        assert p == pytest.approx(0.0952, abs=5e-4)

    def test_adri_seven_24_months(self):
        assert cumulative_displacement(7.0, 24.0) == pytest.approx(0.1306, abs=5e-4)

    def test_zero_horizon(self):
        assert cumulative_displacement(5.0, 0.0) == 0.0

    @given(st.floats(min_value=0.0, max_value=10.0), st.floats(min_value=0.0, max_value=600.0))
    @settings(max_examples=300, deadline=None)
    def test_monotone_and_bounded(self, score, horizon):
        p = cumulative_displacement(score, horizon)
        assert 0.0 <= p < 1.0
        assert cumulative_displacement(score, horizon + 1.0) >= p
        assert cumulative_displacement(min(score + 0.1, 10.0), horizon) >= p - 1e-12

    def test_hazard_consistency_over_one_year(self):
        # cumulative hazard over one year equals lambda under the constant-rate model
        lam = hazard(6.0)
        p = cumulative_displacement(6.0, 12.0)
        assert p == pytest.approx(1.0 - math.exp(-lam))


class TestClassify:
    def test_grid_thresholds(self):
        assert classify(0.0) == "Low"
        assert classify(2.4) == "Low"
        assert classify(2.5) == "Moderate"
        assert classify(4.9) == "Moderate"
        assert classify(5.0) == "High"
        assert classify(6.9) == "High"
        assert classify(7.0) == "Critical"
        assert classify(10.0) == "Critical"

    def test_out_of_range_rejected(self):
        with pytest.raises(DisruptionError):
            classify(10.1)
