"""Adoption curve tests: bisection oracles for the inverse, adjustment math."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aitg.trajectory import (
    BASE_CURVE,
    DEFAULT_WAVES,
    FirmCurve,
    IfsTrajectoryFactors,
    TrajectoryError,
    WaveParams,
    adjust_steepness,
    adjust_t50,
    afc_firm_adjust,
    aitg_at,
    build_firm_curve,
    invert,
    shift_wave_midpoints,
    variable_t50_base,
)


def bisection_oracle(score, curve, lo=-200.0, hi=600.0, iters=200):
    """Plain bisection root finder, independent of the production inverse."""
    for _ in range(iters):
        mid = (lo + hi) / 2.0
        if aitg_at(mid, curve) < score:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


class TestAitgAt:
    def test_asymptotes(self):
        assert aitg_at(-1e5) == pytest.approx(0.0, abs=1e-9)
        assert aitg_at(1e5) == pytest.approx(10.0, abs=1e-9)

    def test_wave1_midpoint_with_tails(self):
        # direct three-term evaluation oracle at t = 18
        t = 18.0
        expected = sum(
            w.ceiling / (1.0 + math.exp(-w.steepness * (t - w.midpoint))) for w in DEFAULT_WAVES
        )
        assert expected == pytest.approx(2.0018, abs=5e-5)
        assert aitg_at(t) == pytest.approx(expected)

    def test_wave2_midpoint_contribution(self):
        w2 = DEFAULT_WAVES[1]
        contribution = w2.ceiling / (1.0 + math.exp(-w2.steepness * (36.0 - w2.midpoint)))
        assert contribution == pytest.approx(1.75)

    def test_strictly_increasing_on_grid(self):
        # dense grid over the invertible range; far tails saturate in float64
        values = [aitg_at(t) for t in [i * 0.5 - 50.0 for i in range(400)]]
        diffs = [b - a for a, b in zip(values, values[1:])]
        assert all(d > 0 for d in diffs)


class TestInvert:
    def test_score_two_near_closed_form(self):
        t = invert(2.0)
        oracle = bisection_oracle(2.0, BASE_CURVE)
        assert t == pytest.approx(oracle, abs=1e-6)
        # wave-2 tail pulls the root slightly before the closed-form 18.0
        assert 17.9 < t < 18.0

    def test_wave_boundary_guard_four(self):
        t = invert(4.0)
        assert abs(aitg_at(t) - 4.0) < 1e-6

    def test_wave_boundary_guard_seven_five(self):
        t = invert(7.5)
        assert abs(aitg_at(t) - 7.5) < 1e-6

    def test_high_score_roundtrip(self):
        t = invert(8.22)
        assert math.isfinite(t)
        assert abs(aitg_at(t) - 8.22) < 1e-6
        assert t == pytest.approx(bisection_oracle(8.22, BASE_CURVE), abs=1e-5)

    def test_out_of_range_rejected(self):
        for bad in (0.0, -1.0, 10.0, 11.0):
            with pytest.raises(TrajectoryError):
                invert(bad)

    def test_never_evaluates_invalid_log(self):
        # would raise ValueError from math.log if the guard failed
        for s in (3.99, 4.0, 4.01, 7.49, 7.5, 7.51):
            invert(s)


class TestAdjustSteepness:
    def test_identity(self):
        f = IfsTrajectoryFactors(1.0, 1.0)
        assert adjust_steepness(0.38, f) == pytest.approx(0.38)

    def test_published_multiplier(self):
        f = IfsTrajectoryFactors(0.70, 0.65)
        assert adjust_steepness(1.0, f) == pytest.approx(0.71, abs=5e-3)

    def test_direct_evaluation(self):
        f = IfsTrajectoryFactors(0.55, 0.48)
        expected = (0.55 + 0.45 * 0.55) * (0.50 + 0.50 * 0.48)  # 0.7975 * 0.74
        assert expected == pytest.approx(0.5902, abs=5e-5)
        assert adjust_steepness(1.0, f) == pytest.approx(expected)


class TestAdjustT50:
    def test_zions_delay(self):
        f = IfsTrajectoryFactors(0.55, 0.48)
        t50 = adjust_t50(18.0, f)
        assert t50 == pytest.approx(35.5, abs=0.1)
        assert t50 / 18.0 == pytest.approx(1.97, abs=5e-3)

    def test_identity(self):
        assert adjust_t50(18.0, IfsTrajectoryFactors(1.0, 1.0)) == pytest.approx(18.0)

    def test_floor_guard(self):
        out = adjust_t50(18.0, IfsTrajectoryFactors(0.05, 0.5))
        assert math.isfinite(out)
        # occ floored at 0.10 before exponentiation
        assert out == pytest.approx(18.0 / (0.10**0.40 * 0.5**0.60))

    @given(st.floats(min_value=0.5, max_value=1.0), st.floats(min_value=0.5, max_value=1.0))
    @settings(max_examples=200, deadline=None)
    def test_delay_at_least_base(self, occ, dr):
        t50 = adjust_t50(18.0, IfsTrajectoryFactors(occ, dr))
        assert t50 >= 18.0 - 1e-9
        if occ == 1.0 and dr == 1.0:
            assert t50 == pytest.approx(18.0)


class TestShiftWaveMidpoints:
    def test_identity(self):
        out = shift_wave_midpoints(DEFAULT_WAVES, 1.0)
        assert [w.midpoint for w in out] == [18.0, 36.0, 60.0]

    def test_scalar_multiply(self):
        out = shift_wave_midpoints(DEFAULT_WAVES, 1.97)
        assert [w.midpoint for w in out] == pytest.approx([35.46, 70.92, 118.2])

    def test_order_preserved(self):
        out = shift_wave_midpoints(DEFAULT_WAVES, 1.97)
        mids = [w.midpoint for w in out]
        assert mids[0] < mids[1] < mids[2]


class TestAfcFirmAdjust:
    def test_identity(self):
        out = afc_firm_adjust(DEFAULT_WAVES, 1.0)
        assert [w.ceiling for w in out] == [4.0, 3.5, 2.5]
        assert [w.midpoint for w in out] == [18.0, 36.0, 60.0]

    def test_power_function_oracle(self):
        out = afc_firm_adjust(DEFAULT_WAVES, 1.2)
        expected = [4.0 * 1.2**0.25, 3.5 * 1.2**0.50, 2.5 * 1.2**1.00]
        assert [w.ceiling for w in out] == pytest.approx(expected, abs=1e-9)
        assert expected == pytest.approx([4.186, 3.834, 3.000], abs=1e-3)

    def test_late_wave_gains_more(self):
        out = afc_firm_adjust(DEFAULT_WAVES, 1.2)
        gains = [w.ceiling / b.ceiling for w, b in zip(out, DEFAULT_WAVES)]
        assert gains[0] < gains[1] < gains[2]

    def test_exponent_ordering_enforced(self):
        with pytest.raises(TrajectoryError, match="increasing"):
            afc_firm_adjust(DEFAULT_WAVES, 1.2, ceiling_exponents=(0.5, 0.5, 1.0))


class TestVariableT50Base:
    def test_endpoints(self):
        assert variable_t50_base(0.0) == 18.0
        assert variable_t50_base(10.0) == 60.0

    def test_linear_interpolation(self):
        assert variable_t50_base(3.80) == pytest.approx(33.96)
        assert variable_t50_base(5.0) == pytest.approx(39.0)


def random_curves(draw):
    occ = draw(st.floats(min_value=0.5, max_value=1.0))
    dr = draw(st.floats(min_value=0.5, max_value=1.0))
    afc = draw(st.floats(min_value=1.0, max_value=1.35))
    t50_base = draw(st.floats(min_value=18.0, max_value=60.0))
    return build_firm_curve(IfsTrajectoryFactors(occ, dr), afc=afc, t50_base=t50_base)


class TestRoundtripProperty:
    @given(st.data())
    @settings(max_examples=120, deadline=None)
    def test_roundtrip_random_curves(self, data):
        curve = random_curves(data.draw)
        score = data.draw(st.floats(min_value=0.05, max_value=9.95))
        t = invert(score, curve)
        assert abs(aitg_at(t, curve) - score) < 1e-6

    def test_firm_adjusted_monotone(self):
        curve = build_firm_curve(IfsTrajectoryFactors(0.55, 0.48), afc=1.198)
        values = [aitg_at(t, curve) for t in [i * 1.0 - 30.0 for i in range(230)]]
        assert all(b > a for a, b in zip(values, values[1:]))


class TestWaveParamsValidation:
    def test_bad_ceiling_sum_rejected(self):
        waves = (WaveParams(4.0, 0.38, 18.0), WaveParams(3.5, 0.42, 36.0), WaveParams(3.0, 0.32, 60.0))
        with pytest.raises(TrajectoryError, match="sum"):
            build_firm_curve(IfsTrajectoryFactors(1.0, 1.0), base_waves=waves)

    def test_bad_midpoint_order_rejected(self):
        waves = (WaveParams(4.0, 0.38, 36.0), WaveParams(3.5, 0.42, 18.0), WaveParams(2.5, 0.32, 60.0))
        with pytest.raises(TrajectoryError, match="increasing"):
            build_firm_curve(IfsTrajectoryFactors(1.0, 1.0), base_waves=waves)
