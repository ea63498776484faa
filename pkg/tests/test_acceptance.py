"""Acceptance suite.

One test per acceptance criterion, each at its stated tolerance and
runtime budget, printing a pass line on completion. Run with ``-s`` (or
read captured stdout) for the per-criterion report.
"""

import math
import time

import numpy as np
import pytest

from aitg.calibration import compute_iass, compute_psi
from aitg.frontier import compute_afc, adjusted_ceiling
from aitg.pipeline import build_perturbation_closure, default_mc_specs, evaluate_firm
from aitg.scorecard import (
    FirmDimensionScores,
    IfsFactors,
    SurveyAnswer,
    SurveyResponse,
    aitg_raw,
    discriminability,
    ifs_residual,
    ir_and_gap,
    score_survey,
)
from aitg.sensitivity import (
    DistributionSpec,
    McConfig,
    RankPanel,
    mc_delta_ev,
    sobol_first_order,
    spearman,
    weight_perturbation_rank_stability,
)
from aitg.trajectory import IfsTrajectoryFactors, adjust_t50, aitg_at, build_firm_curve, invert
from aitg.valuation import (
    CesConfig,
    capture,
    ces_bottleneck,
    delta_r,
    firm_scale,
    FinancialBaseline,
    pool_value,
    terminal_value,
)
from aitg.disruption import cumulative_displacement
from aitg.workspace import load_workspace


@pytest.fixture(scope="module")
def bundle():
    return load_workspace()


def _report(name: str) -> None:
    print(f"ACCEPTANCE {name}: PASS")


class TestAcceptance:
    def test_iass_reproduction_22_rows(self, bundle):
        start = time.perf_counter()
        for iid, cal in bundle.industries.items():
            recomputed = compute_iass(cal.scores, bundle.weights, cal.psi)
            published = bundle.published[iid]["iass"]
            assert abs(recomputed - published) <= 0.02, iid
        anchors = {
            "vertical-saas": 9.06,
            "commercial-banking": 7.83,
            "logistics-transport": 6.82,
            "healthcare-services": 4.27,
            "construction": 4.26,
        }
        for iid, published in anchors.items():
            recomputed = bundle.industries[iid].iass_base
            assert abs(recomputed - published) <= 0.01, iid
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0
        _report(f"IASS reproduction (22 rows +/-0.02, anchors +/-0.01, {elapsed:.3f}s)")

    def test_psi_values(self):
        assert compute_psi(4.1) == pytest.approx(0.743, abs=5e-4)
        assert compute_psi(3.8) == pytest.approx(0.663, abs=5e-4)
        for rff in (5.0, 6.3, 9.9, 10.0):
            assert compute_psi(rff) == 1.0
        _report("psi floor values (0.743 / 0.663 / 1.0 exact)")

    # Published frontier-multiplier grid; None marks cells capped at 1.35.
    AFC_GRID_THETAS = (0.08, 0.11, 0.14, 0.22, 0.28, 0.31, 0.50, 1.00)
    AFC_GRID_CTS = (0.90, 1.00, 1.20, 1.50, 1.70, 1.90, 2.10)
    AFC_GRID = {
        0.08: (0.992, 1.000, 1.016, 1.040, 1.056, 1.072, 1.088),
        0.11: (0.989, 1.000, 1.022, 1.055, 1.077, 1.099, 1.121),
        0.14: (0.986, 1.000, 1.028, 1.070, 1.098, 1.126, 1.154),
        0.22: (0.978, 1.000, 1.044, 1.110, 1.154, 1.198, 1.242),
        0.28: (0.972, 1.000, 1.056, 1.140, 1.196, 1.252, 1.308),
        0.31: (0.969, 1.000, 1.062, 1.155, 1.217, 1.279, 1.341),
        0.50: (0.950, 1.000, 1.100, 1.250, None, None, None),
        1.00: (0.900, 1.000, 1.200, None, None, None, None),
    }

    def test_afc_grid_and_adjusted_ceilings(self, bundle):
        for theta, row in self.AFC_GRID.items():
            for c_t, published in zip(self.AFC_GRID_CTS, row):
                value = compute_afc(theta, c_t)
                if published is None:
                    assert value == 1.35  # capped exactly
                else:
                    assert abs(value - published) <= 5e-4, (theta, c_t)
        for iid, cal in bundle.industries.items():
            star = adjusted_ceiling(bundle.published[iid]["iass"], compute_afc(cal.theta, 1.90))
            assert abs(star - bundle.published[iid]["iass_star"]) <= 0.02, iid
        _report("AFC grid to 3 decimals, caps exact, 22 adjusted ceilings +/-0.02")

    def test_zions_ten_step_pipeline(self, bundle):
        start = time.perf_counter()
        firm = bundle.firms["zions-bancorp"]
        industry = bundle.industries[firm.industry_id]

        # steps 1-6: labor-productivity pool traced standalone
        baseline = FinancialBaseline(
            revenue_b=3.4, s_star_b=3.3, wacc=0.09, exit_multiple=10.0, vendor_only=True
        )
        phi = firm_scale(baseline)
        assert phi == pytest.approx(0.515, abs=0.002)

        b_p = ces_bottleneck([0.40, 0.35, 0.42], config=CesConfig(rho=5.0))
        assert b_p == pytest.approx(0.382, abs=0.003)

        afc = compute_afc(industry.theta, 1.90)
        iass_star = adjusted_ceiling(industry.iass_base, afc)
        aitg = aitg_raw(FirmDimensionScores(scores=firm.dims, tiers=firm.tiers))
        _, g_eff = ir_and_gap(aitg, iass_star)
        eta = 1.0 - math.exp(-3.5 * g_eff / 10.0)
        assert eta == pytest.approx(0.859, abs=0.002)

        cap = capture(g_eff, 0.65, b_p)
        v_p = pool_value(0.08, 3.4, phi, cap)
        assert v_p * 1000 == pytest.approx(30.0, rel=0.05)

        # steps 7-10: timing, increment, residual, terminal value
        t50 = adjust_t50(18.0, IfsTrajectoryFactors(occ=0.55, dr=0.48))
        assert t50 == pytest.approx(35.5, abs=0.1)

        dr = delta_r(23.8, t50, 60.0)
        assert dr == pytest.approx(0.891, abs=0.003)

        resid = ifs_residual(firm.ifs)
        assert resid == pytest.approx(0.710, abs=0.002)

        tv_p = terminal_value(v_p, dr, 10.0, resid)
        assert tv_p * 1000 == pytest.approx(190.0, rel=0.03)

        # all-pools run lands at the published order of magnitude
        report = evaluate_firm(bundle, "zions-bancorp")
        assert report["valuation"]["delta_ev_b"] == pytest.approx(0.90, rel=0.15)

        elapsed = time.perf_counter() - start
        assert elapsed < 0.1
        _report(f"Zions ten-step pipeline (all eight figures in tolerance, {elapsed * 1000:.1f}ms)")

    def test_firm_composites(self, bundle):
        jpm = evaluate_firm(bundle, "jpmorgan-chase")["scorecard"]
        assert round(jpm["aitg_raw"], 2) == 8.22
        assert round(jpm["ir"], 2) == 8.76
        assert round(jpm["g_eff"], 2) == 1.16
        zions = evaluate_firm(bundle, "zions-bancorp")["scorecard"]
        assert round(zions["aitg_raw"], 2) == 3.80
        assert round(zions["ir"], 2) == 4.05
        assert round(zions["g_eff"], 2) == 5.58
        jpm_resid = ifs_residual(IfsFactors(occ=0.92, dr=0.94, vtr=0.91, crs=0.88, reg=0.85))
        assert jpm_resid == pytest.approx(0.88, abs=0.005)
        _report("firm composites (JPM 8.22/8.76/1.16, Zions 3.80/4.05/5.58, residual 0.88)")

    def test_hazard_probabilities(self):
        assert cumulative_displacement(5.0, 24.0) == pytest.approx(0.0952, abs=5e-4)
        assert cumulative_displacement(7.0, 24.0) == pytest.approx(0.1306, abs=5e-4)
        _report("hazard probabilities (0.0952 / 0.1306 at 24 months)")

    def test_backtest_spearman(self, bundle):
        items = bundle.backtest["items"]
        rho = spearman([i["score"] for i in items], [i["outcome"] for i in items])
        assert rho == pytest.approx(0.818, abs=0.005)
        _report(f"backtest Spearman ({rho:.4f} vs 0.818 +/-0.005, n={len(items)})")

    def test_discriminability(self):
        assert discriminability(4.42, 0.48, 0.62) == pytest.approx(5.7, abs=0.1)
        assert discriminability(0.28, 0.62, 0.54) == pytest.approx(0.34, abs=0.02)
        _report("discriminability (5.7 within-industry, 0.34 cross-industry)")

    def test_ces_property_suite(self):
        start = time.perf_counter()
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            n = int(rng.integers(2, 7))
            inputs = rng.uniform(0.01, 1.0, size=n).tolist()
            w = rng.uniform(0.1, 1.0, size=n)
            weights = (w / w.sum()).tolist()

            # equal-input identity
            c = float(rng.uniform(0.05, 1.0))
            assert ces_bottleneck([c] * n, weights, CesConfig(rho=float(rng.uniform(0.5, 50)))) == pytest.approx(c)

            # rho-limit convergence to the minimum, monotone from 5 to 500
            prev = None
            for rho in (5.0, 25.0, 100.0, 500.0):
                b = ces_bottleneck(inputs, weights, CesConfig(rho=rho))
                assert b >= min(inputs) - 1e-12
                if prev is not None:
                    assert b <= prev + 1e-9
                prev = b
            assert prev == pytest.approx(min(inputs), abs=2e-2)

            # Cobb-Douglas limit at vanishing rho
            gm = math.exp(sum(wi * math.log(ei) for wi, ei in zip(weights, inputs)))
            assert ces_bottleneck(inputs, weights, CesConfig(rho=1e-6)) == pytest.approx(gm, abs=1e-4)

            # positivity floor
            floored = list(inputs)
            floored[0] = 0.0
            assert ces_bottleneck(floored, weights) >= 0.01
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0
        _report(f"CES property suite (1000 instances, {elapsed:.2f}s)")

    def test_inverse_mapping_property_suite(self):
        start = time.perf_counter()
        rng = np.random.default_rng(77)
        for _ in range(500):
            factors = IfsTrajectoryFactors(
                occ=float(rng.uniform(0.5, 1.0)), dr=float(rng.uniform(0.5, 1.0))
            )
            curve = build_firm_curve(
                factors,
                afc=float(rng.uniform(1.0, 1.35)),
                t50_base=float(rng.uniform(18.0, 60.0)),
            )
            score = float(rng.uniform(0.05, 9.95))
            t = invert(score, curve)
            assert abs(aitg_at(t, curve) - score) < 1e-6

        # exact wave-boundary scores never touch an invalid logarithm
        for s in (4.0, 7.5):
            t = invert(s)
            assert abs(aitg_at(t) - s) < 1e-6

        # monotonicity over a dense grid guarantees uniqueness
        values = [aitg_at(t) for t in np.linspace(-50.0, 150.0, 800)]
        assert all(b > a for a, b in zip(values, values[1:]))
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0
        _report(f"inverse mapping suite (500 roundtrips at 1e-6, guards, {elapsed:.2f}s)")

    def test_monte_carlo_suite(self, bundle):
        start = time.perf_counter()
        cfg = bundle.run_config.replace(t50_mode="score_dependent")
        closure, bases = build_perturbation_closure(bundle, "jpmorgan-chase", cfg)
        specs = default_mc_specs(cfg)
        mc_cfg = McConfig(draws=10_000, seed=7)

        first = mc_delta_ev(closure, specs, bases, mc_cfg)
        second = mc_delta_ev(closure, specs, bases, mc_cfg)
        assert first.draw_digest == second.draw_digest  # bit-identical rerun
        assert first.percentiles == second.percentiles

        # worker-count independence: shuffled two-way partition, same digest
        order = [j for j in range(10_000) if j % 2 == 1] + [j for j in range(10_000) if j % 2 == 0]
        partitioned = mc_delta_ev(closure, specs, bases, mc_cfg, draw_indices=order)
        assert partitioned.draw_digest == first.draw_digest

        p = first.percentiles
        assert p[10.0] <= p[50.0] <= p[90.0]

        degenerate = {k: DistributionSpec(s.kind, 0.0, s.floor, s.ceiling) for k, s in specs.items()}
        collapsed = mc_delta_ev(closure, degenerate, bases, McConfig(draws=100, seed=7))
        base_value = closure(bases)
        assert all(v == pytest.approx(base_value) for v in collapsed.percentiles.values())

        ratio = first.ratio()
        assert 3.5 <= ratio <= 6.5
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0
        _report(f"Monte Carlo suite (JPM P90/P10 {ratio:.2f} in [3.5, 6.5], {elapsed:.1f}s)")

    def test_sobol_suite(self, bundle):
        start = time.perf_counter()
        # analytic additive model at 50k draws
        specs = {
            "x1": DistributionSpec("normal-additive", 1.0),
            "x2": DistributionSpec("normal-additive", 1.0),
        }
        res = sobol_first_order(
            lambda v: 3.0 * v["x1"] + v["x2"],
            specs, {"x1": 0.0, "x2": 0.0},
            McConfig(draws=50_000, seed=13), input_names=("x1", "x2"),
        )
        assert res.first_order["x1"] == pytest.approx(0.9, abs=0.03)
        assert res.first_order["x2"] == pytest.approx(0.1, abs=0.03)

        # full pipeline: the exit multiple is the strictly largest index
        closure, bases = build_perturbation_closure(bundle, "zions-bancorp")
        pipeline_res = sobol_first_order(
            closure, default_mc_specs(bundle.run_config), bases, McConfig(draws=20_000, seed=11)
        )
        ordered = sorted(pipeline_res.first_order.items(), key=lambda kv: -kv[1])
        assert ordered[0][0] == "exit_multiple"
        assert ordered[0][1] > ordered[1][1]
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0
        _report(
            "Sobol suite (additive shares +/-0.03 at 50k; exit multiple strictly largest: "
            + ", ".join(f"{k}={v:.3f}" for k, v in ordered)
            + f", {elapsed:.1f}s)"
        )

    def test_rank_stability(self, bundle):
        start = time.perf_counter()
        panel = RankPanel(item_ids=bundle.rank_anchors, half_width=0.05)
        result = weight_perturbation_rank_stability(
            list(bundle.industries.values()), panel, draws=10_000, seed=3
        )
        assert result.total_swaps == 0
        assert all(f == 0.0 for f in result.swap_frequency.values())
        elapsed = time.perf_counter() - start
        assert elapsed < 20.0
        _report(f"rank stability (5 anchors, 10k draws, zero swaps, {elapsed:.1f}s)")

    def test_survey_pipeline(self, bundle):
        def to_answers(records):
            return SurveyResponse(answers=[
                SurveyAnswer(
                    question=r["question"], answer=r["answer"], evidence=r["evidence"],
                    citation=r.get("citation", ""), sub_answers=r.get("sub_answers"),
                )
                for r in records
            ])

        max_result = score_survey(to_answers(bundle.surveys["all_max"]))
        assert all(v == 9.0 for v in max_result.scores.scores.values())
        assert aitg_raw(max_result.scores) == 9.0

        min_result = score_survey(to_answers(bundle.surveys["all_min"]))
        assert all(v == 1.0 for v in min_result.scores.scores.values())

        cap_result = score_survey(to_answers(bundle.surveys["evidence_cap"]))
        assert cap_result.question_scores[1] == 5.0  # answer 3 without evidence -> anchor 5
        assert cap_result.scores.tiers["dim"] == "D"
        # dimension means are exact rational arithmetic
        assert cap_result.scores.scores["dim"] == pytest.approx((5 + 5 + 5 + 5) / 4)
        assert cap_result.scores.scores["pac"] == 5.0
        _report("survey pipeline (all-max 9.0, all-min 1.0, evidence cap to 5 + tier D)")
