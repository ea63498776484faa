"""Sensitivity machinery tests: determinism, Sobol recovery, rank stability, Spearman."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aitg.sensitivity import (
    DistributionSpec,
    McConfig,
    RankPanel,
    SensitivityError,
    action_signal,
    mc_delta_ev,
    sobol_first_order,
    spearman,
    weight_perturbation_rank_stability,
)
from aitg.workspace import load_workspace

SPECS = {
    "capture_rate": DistributionSpec("uniform-multiplier", 0.25),
    "exit_multiple": DistributionSpec("uniform-multiplier", 0.5, floor=0.5),
    "gap": DistributionSpec("normal-additive", 0.5, floor=0.0),
    "ifs_residual": DistributionSpec("normal-additive", 0.08, floor=0.01, ceiling=1.0),
    "impl_cost": DistributionSpec("lognormal-multiplier", 0.30),
}
ZERO_SPECS = {k: DistributionSpec(s.kind, 0.0, s.floor, s.ceiling) for k, s in SPECS.items()}
BASES = {"capture_rate": 1.0, "exit_multiple": 10.0, "gap": 5.58, "ifs_residual": 0.71, "impl_cost": 0.04}


def linear_model(inputs):
    return (
        inputs["exit_multiple"] * 2.0
        + inputs["gap"] * 3.0
        + inputs["ifs_residual"] * 10.0
        + inputs["capture_rate"]
        - inputs["impl_cost"]
    )


class TestMcDeltaEv:
    def test_degenerate_collapse(self):
        base_value = linear_model(BASES)
        summary = mc_delta_ev(linear_model, ZERO_SPECS, BASES, McConfig(draws=64, seed=3))
        assert all(v == pytest.approx(base_value) for v in summary.percentiles.values())

    def test_percentiles_ordered(self):
        s = mc_delta_ev(linear_model, SPECS, BASES, McConfig(draws=2000, seed=5))
        assert s.percentiles[10.0] <= s.percentiles[50.0] <= s.percentiles[90.0]

    def test_single_draw(self):
        s = mc_delta_ev(linear_model, SPECS, BASES, McConfig(draws=1, seed=5))
        vals = set(round(v, 12) for v in s.percentiles.values())
        assert len(vals) == 1

    def test_seeded_determinism_bit_identical(self):
        a = mc_delta_ev(linear_model, SPECS, BASES, McConfig(draws=500, seed=11))
        b = mc_delta_ev(linear_model, SPECS, BASES, McConfig(draws=500, seed=11))
        assert a.draw_digest == b.draw_digest
        assert a.percentiles == b.percentiles

    def test_seed_changes_digest(self):
        a = mc_delta_ev(linear_model, SPECS, BASES, McConfig(draws=500, seed=11))
        b = mc_delta_ev(linear_model, SPECS, BASES, McConfig(draws=500, seed=12))
        assert a.draw_digest != b.draw_digest

    def test_worker_partition_independence(self):
        cfg = McConfig(draws=400, seed=21)
        serial = mc_delta_ev(linear_model, SPECS, BASES, cfg)
        # simulate two workers evaluating interleaved partitions, in reversed order
        part1 = [j for j in range(400) if j % 2 == 0][::-1]
        part2 = [j for j in range(400) if j % 2 == 1][::-1]
        chunked = mc_delta_ev(linear_model, SPECS, BASES, cfg, draw_indices=part2 + part1)
        assert chunked.draw_digest == serial.draw_digest
        assert chunked.percentiles == serial.percentiles

    def test_missing_spec_rejected_before_sampling(self):
        calls = []

        def spy(inputs):
            calls.append(1)
            return 0.0

        bad = dict(SPECS)
        del bad["gap"]
        with pytest.raises(SensitivityError, match="gap"):
            mc_delta_ev(spy, bad, BASES, McConfig(draws=10, seed=0))
        assert calls == []

    def test_incomplete_partition_rejected(self):
        with pytest.raises(SensitivityError, match="partition"):
            mc_delta_ev(linear_model, SPECS, BASES, McConfig(draws=10, seed=0), draw_indices=[0, 1])


class TestSobol:
    def test_additive_model_analytic_shares(self):
        # y = 3*x1 + x2 with equal-variance inputs: S1 = 0.9, S2 = 0.1
        specs = {
            "x1": DistributionSpec("normal-additive", 1.0),
            "x2": DistributionSpec("normal-additive", 1.0),
        }
        bases = {"x1": 0.0, "x2": 0.0}
        res = sobol_first_order(
            lambda v: 3.0 * v["x1"] + v["x2"],
            specs, bases, McConfig(draws=50_000, seed=13), input_names=("x1", "x2"),
        )
        assert res.first_order["x1"] == pytest.approx(0.9, abs=0.03)
        assert res.first_order["x2"] == pytest.approx(0.1, abs=0.03)
        assert sum(res.first_order.values()) <= 1.0 + 0.05

    def test_zero_variance_input_gets_zero_index(self):
        specs = {
            "x1": DistributionSpec("normal-additive", 1.0),
            "x2": DistributionSpec("normal-additive", 0.0),
        }
        res = sobol_first_order(
            lambda v: v["x1"] + v["x2"],
            specs, {"x1": 0.0, "x2": 0.0}, McConfig(draws=20_000, seed=13),
            input_names=("x1", "x2"),
        )
        assert res.first_order["x2"] == pytest.approx(0.0, abs=0.02)

    def test_zero_output_variance_rejected(self):
        specs = {
            "x1": DistributionSpec("normal-additive", 1.0),
            "x2": DistributionSpec("normal-additive", 1.0),
        }
        with pytest.raises(SensitivityError, match="variance"):
            sobol_first_order(lambda v: 7.0, specs, {"x1": 0.0, "x2": 0.0},
                              McConfig(draws=1000, seed=1), input_names=("x1", "x2"))

    def test_seeded_determinism(self):
        specs = {
            "x1": DistributionSpec("normal-additive", 1.0),
            "x2": DistributionSpec("normal-additive", 1.0),
        }
        kw = dict(input_names=("x1", "x2"))
        f = lambda v: v["x1"] * 2 + v["x2"]  # noqa: E731
        a = sobol_first_order(f, specs, {"x1": 0.0, "x2": 0.0}, McConfig(draws=5000, seed=2), **kw)
        b = sobol_first_order(f, specs, {"x1": 0.0, "x2": 0.0}, McConfig(draws=5000, seed=2), **kw)
        assert a.first_order == b.first_order


@pytest.fixture(scope="module")
def bundle():
    return load_workspace()


class TestRankStability:

    def test_zero_perturbation_no_shift(self, bundle):
        panel = RankPanel(item_ids=bundle.rank_anchors, half_width=0.0)
        res = weight_perturbation_rank_stability(list(bundle.industries.values()), panel, draws=50, seed=0)
        assert res.mean_rank_shift == 0.0
        assert res.total_swaps == 0

    def test_identical_industries_swap_half_the_time(self, bundle):
        # two clones of the same industry: ranking between them is a coin flip
        import dataclasses

        base = bundle.industries["vertical-saas"]
        clone_a = dataclasses.replace(base, industry_id="clone-a")
        clone_b = dataclasses.replace(base, industry_id="clone-b")
        panel = RankPanel(item_ids=("clone-a", "clone-b"), half_width=0.05)
        res = weight_perturbation_rank_stability([clone_a, clone_b], panel, draws=4000, seed=9)
        assert res.swap_frequency[("clone-a", "clone-b")] == pytest.approx(0.5, abs=0.05)

    def test_unknown_item_rejected(self, bundle):
        panel = RankPanel(item_ids=("vertical-saas", "nope"))
        with pytest.raises(SensitivityError, match="nope"):
            weight_perturbation_rank_stability(list(bundle.industries.values()), panel, draws=10)


class TestSpearman:
    def test_perfect_monotone(self):
        assert spearman([1, 2, 3, 4], [10, 20, 30, 40]) == pytest.approx(1.0)

    def test_reversed(self):
        assert spearman([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)

    def test_tie_handling_average_ranks(self):
        # hand oracle: ranks x = (1,2,3,4), y = (1.5,1.5,3,4) -> rho = 0.9487
        rho = spearman([1, 2, 3, 4], [5, 5, 7, 9])
        rx = np.array([1, 2, 3, 4.0])
        ry = np.array([1.5, 1.5, 3, 4.0])
        expected = float(np.corrcoef(rx, ry)[0, 1])
        assert rho == pytest.approx(expected)

    def test_constant_sequence_rejected(self):
        with pytest.raises(SensitivityError, match="constant"):
            spearman([1, 1, 1], [1, 2, 3])

    @given(st.lists(st.integers(min_value=-1000, max_value=1000), min_size=4, max_size=20, unique=True))
    @settings(max_examples=100, deadline=None)
    def test_invariant_under_monotone_transform(self, xs):
        xs = [x / 10.0 for x in xs]
        ys = [x * 2 + 1 for x in xs]
        base = spearman(xs, ys)
        transformed = spearman([x**3 for x in xs], ys)
        assert transformed == pytest.approx(base)


class TestActionSignal:
    def test_invest(self):
        assert action_signal(20.2, 44.4, 12.0) == "Invest"

    def test_monitor(self):
        assert action_signal(0.61, 0.88, 3.5) == "Monitor"

    def test_all_zero(self):
        assert action_signal(0.0, 0.0, 0.0) == "DoNotInvest"

    def test_diligence_near_zero_downside(self):
        assert action_signal(0.001, 0.5, 10.0) == "Diligence"

    def test_precedence_invest_first(self):
        # qualifies for invest even though VD also exceeds the monitor band
        assert action_signal(1.5, 2.0, 6.0) == "Invest"
