"""End-to-end firm evaluation.

Composes the module chain (industry ceiling, frontier adjustment, firm
scorecard, adoption trajectory, value bridge, disruption risk) into one
deterministic report, and builds the perturbation closures used by the
Monte Carlo and variance-decomposition machinery.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict
from typing import Any, Callable, Mapping

from . import __version__ as ENGINE_VERSION
from .calibration import IndustryCalibration
from .frontier import AfcConfig, ScenarioSet, compute_afc, adjusted_ceiling, scenario_uq
from .scorecard import (
    FirmDimensionScores,
    UncertaintyQuotient,
    aggregate_uq,
    aitg_raw,
    ifs_residual,
    ir_and_gap,
    scorecard_line,
)
from .trajectory import (
    FirmCurve,
    IfsTrajectoryFactors,
    build_firm_curve,
    invert,
    variable_t50_base,
)
from .valuation import (
    CesConfig,
    FinancialBaseline,
    PoolValue,
    capture,
    ces_bottleneck,
    delta_ev,
    delta_r,
    fcf_interim,
    firm_scale,
    npv_cost,
    pool_value,
    rescale_captures,
    terminal_value,
    value_density,
)
from .disruption import AdriConfig, adri, classify, cumulative_displacement, hazard, moat, urgency_delta
from .sensitivity import DistributionSpec
from .workspace import FirmProfile, RunConfig, WorkspaceBundle

__all__ = [
    "PipelineError",
    "evaluate_firm",
    "default_mc_specs",
    "build_perturbation_closure",
    "report_content_id",
]

#: Curve-domain guard for the score inversion, in score units.
_SCORE_MARGIN = 0.01


class PipelineError(RuntimeError):
    """Evaluation failure, labeled with the pipeline stage that raised it."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


def _stage(stage: str, fn: Callable[[], Any]) -> Any:
    try:
        return fn()
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(stage, str(exc)) from exc


def _canonical_digest(payload: Any) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def default_mc_specs(config: RunConfig) -> dict[str, DistributionSpec]:
    """Default perturbation laws for the five named pipeline inputs.

    Exit multiple moves by a +/-50% uniform multiplier (value floored at
    0.5 turns), capture rate by +/-25% (uniform multiplier),
    implementation cost by a lognormal(0, 0.30) multiplier, the effective
    gap by a +/-0.5 point normal (floored at zero), and the residual
    feasibility multiplier by a +/-0.08 normal clipped into (0, 1].
    """
    del config
    return {
        "capture_rate": DistributionSpec("uniform-multiplier", 0.25, floor=0.0),
        "exit_multiple": DistributionSpec("uniform-multiplier", 0.5, floor=0.5),
        "gap": DistributionSpec("normal-additive", 0.5, floor=0.0),
        "ifs_residual": DistributionSpec("normal-additive", 0.08, floor=0.01, ceiling=1.0),
        "impl_cost": DistributionSpec("lognormal-multiplier", 0.30, floor=0.0),
    }


def _baseline_for(firm: FirmProfile, industry: IndustryCalibration, config: RunConfig) -> FinancialBaseline:
    return FinancialBaseline(
        revenue_b=firm.revenue_b,
        s_star_b=firm.s_star_b if firm.s_star_b is not None else industry.s_star_b,
        wacc=firm.wacc,
        exit_multiple=firm.exit_multiple if firm.exit_multiple is not None else industry.exit_multiple,
        cost_streams=firm.cost_streams,
        vendor_only=firm.vendor_only,
        capture_lambda=config.capture_lambda,
        scale_alpha=config.scale_alpha,
    )


def _curve_for(firm: FirmProfile, afc: float, config: RunConfig, aitg: float) -> FirmCurve:
    t50_base = config.t50_base if config.t50_mode == "constant" else variable_t50_base(aitg)
    return build_firm_curve(
        IfsTrajectoryFactors(occ=firm.ifs.occ, dr=firm.ifs.dr),
        afc=afc,
        t50_base=t50_base,
        ramp_steepness=config.ramp_steepness,
        ceiling_exponents=config.ceiling_exponents,
        onset_exponents=config.onset_exponents,
    )


def _invertible_score(aitg: float, curve: FirmCurve) -> float:
    hi = min(10.0, curve.total_ceiling) - _SCORE_MARGIN
    return min(max(aitg, _SCORE_MARGIN), hi)


def _wave_zone(t_hat: float, curve: FirmCurve) -> str:
    mids = [w.midpoint for w in curve.waves]
    if t_hat < mids[0]:
        return "pre-foundation"
    if t_hat < mids[1]:
        return "foundation"
    if t_hat < mids[2]:
        return "generative-agentic"
    return "autonomous"


def _cost_terms(firm: FirmProfile, baseline: FinancialBaseline, config: RunConfig) -> tuple[float, float, str]:
    """(undiscounted implementation cost, NPV cost, basis label), $B."""
    if firm.cost_streams:
        total = sum(s.capex + s.opex for s in firm.cost_streams)
        return total, npv_cost(firm.cost_streams, baseline.wacc), "explicit-streams"
    total = config.cost_proxy_rate * firm.revenue_b
    return total, total / (1.0 + baseline.wacc), f"revenue-proxy-{config.cost_proxy_rate:.3%}"


def evaluate_firm(
    bundle: WorkspaceBundle,
    firm_id: str,
    config: RunConfig | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> dict[str, Any]:
    """Evaluate one firm into a deterministic pipeline report.

    ``overrides`` patches run-config fields for what-if analysis (for
    example ``{"c_t": 2.1}`` or ``{"ifs_dr": 0.9, "exit_multiple": 8}``).
    Firm-level override keys: ``ifs_occ``, ``ifs_dr``, ``ifs_vtr``,
    ``ifs_crs``, ``ifs_reg``, ``exit_multiple``, ``t_hat_months``; all
    other keys address RunConfig fields.
    """
    if firm_id not in bundle.firms:
        raise PipelineError("workspace", f"unknown firm id {firm_id!r}")
    firm = bundle.firms[firm_id]
    cfg = config or bundle.run_config
    if overrides:
        firm, cfg = _apply_overrides(firm, cfg, overrides)
    industry = bundle.industries[firm.industry_id]

    afc = _stage("frontier", lambda: compute_afc(industry.theta, cfg.c_t, AfcConfig(cfg.c_0, cfg.alpha_max)))
    iass_star = _stage("frontier", lambda: adjusted_ceiling(industry.iass_base, afc))

    scores = _stage("scorecard", lambda: FirmDimensionScores(scores=firm.dims, tiers=firm.tiers))
    aitg = aitg_raw(scores)
    ir, g_eff = _stage("scorecard", lambda: ir_and_gap(aitg, iass_star))
    scenario = ScenarioSet(*cfg.scenario_afc, weights=cfg.scenario_weights)
    uq_parts = UncertaintyQuotient(
        data_tier=scores.data_tier_component(),
        model=cfg.uq_model,
        afc=scenario_uq(scenario),
        interrater=cfg.uq_interrater,
    )
    uq_total = aggregate_uq(uq_parts)

    curve = _stage("trajectory", lambda: _curve_for(firm, afc, cfg, aitg))
    score_clamped = _invertible_score(aitg, curve) != aitg
    if firm.t_hat_months is not None:
        t_hat = firm.t_hat_months
        t_hat_source = "fixture-override"
    else:
        t_hat = _stage("trajectory", lambda: invert(_invertible_score(aitg, curve), curve))
        t_hat_source = "inverted"

    baseline = _stage("valuation", lambda: _baseline_for(firm, industry, cfg))
    phi = firm_scale(baseline)
    ces_cfg = CesConfig(rho=cfg.ces_rho, floor=cfg.ces_floor)
    raw_captures: list[float] = []
    bottlenecks: list[float] = []
    uplifts: list[float] = []
    for pool in bundle.pools:
        e = [max(firm.dims[d] / 10.0, ces_cfg.floor) for d in pool.dims]
        b = _stage("valuation", lambda e=e, pool=pool: ces_bottleneck(e, pool.weights(), ces_cfg))
        bottlenecks.append(b)
        raw_captures.append(capture(g_eff, pool.base_capture, b, cfg.capture_lambda))
        uplifts.append(firm.pool_uplifts.get(pool.pool_id, pool.uplift_fraction))
    captures, rescaled = rescale_captures(raw_captures)
    pool_values: list[PoolValue] = []
    for pool, b, c_raw, c_eff, uplift in zip(bundle.pools, bottlenecks, raw_captures, captures, uplifts):
        v = pool_value(uplift, firm.revenue_b, phi, c_eff)
        pool_values.append(
            PoolValue(
                pool_id=pool.pool_id,
                bottleneck=b,
                capture_raw=c_raw,
                capture=c_eff,
                uplift_fraction=uplift,
                baseline_b=firm.revenue_b * uplift,
                value_b=v,
            )
        )
    pool_sum = sum(p.value_b for p in pool_values)

    ifs_res = ifs_residual(firm.ifs)
    dr_f = _stage("valuation", lambda: delta_r(t_hat, curve.t50, cfg.hold_months, cfg.ramp_steepness))
    tv = terminal_value(pool_sum, dr_f, baseline.exit_multiple, ifs_res)
    fcf = fcf_interim(pool_sum, t_hat, curve.t50, ifs_res, baseline.wacc, cfg.ramp_steepness)
    impl_cost, cost_npv_b, cost_basis = _cost_terms(firm, baseline, cfg)
    dev = delta_ev(tv, fcf, cost_npv_b)
    vd, tier = value_density(dev, impl_cost)

    moat_f = moat(firm.moat)
    urgency = urgency_delta(cfg.c_t, cfg.c_0)
    adri_cfg = AdriConfig(cfg.adri_normalization, cfg.hazard_scale)
    adri_score = _stage("disruption", lambda: adri(g_eff, industry.cadr, moat_f, urgency, adri_cfg))

    firm_digest = _canonical_digest(_firm_record(firm))
    industry_digest = _canonical_digest(
        {"id": industry.industry_id, "scores": dict(industry.scores), "psi": industry.psi,
         "theta": industry.theta, "s_star_b": industry.s_star_b, "exit_multiple": industry.exit_multiple}
    )
    config_digest = _canonical_digest(asdict(cfg))

    report: dict[str, Any] = {
        "schema_version": 1,
        "engine_version": ENGINE_VERSION,
        "firm": {"id": firm.firm_id, "name": firm.name, "industry": industry.industry_id},
        "provenance": {
            "firm_digest": firm_digest,
            "industry_digest": industry_digest,
            "config_digest": config_digest,
            "inputs": {"firm": _firm_record(firm), "config": asdict(cfg)},
        },
        "ceiling": {
            "iass_base": industry.iass_base,
            "psi": industry.psi,
            "theta": industry.theta,
            "c_t": cfg.c_t,
            "afc": afc,
            "iass_star": iass_star,
            "units": "score-0-10",
        },
        "scorecard": {
            "dimensions": dict(firm.dims),
            "tiers": dict(firm.tiers),
            "aitg_raw": aitg,
            "ir": ir,
            "g_eff": g_eff,
            "uq": {
                "data_tier": uq_parts.data_tier,
                "model": uq_parts.model,
                "afc": uq_parts.afc,
                "interrater": uq_parts.interrater,
                "total": uq_total,
            },
            "line": scorecard_line(aitg, ir, g_eff, uq_total),
            "frontier_exceeded": g_eff == 0.0,
            "units": "score-0-10",
        },
        "trajectory": {
            "t_hat_months": t_hat,
            "t_hat_source": t_hat_source,
            "score_clamped_for_inversion": score_clamped,
            "t50_months": curve.t50,
            "t50_base_months": curve.t50_base,
            "t50_mode": cfg.t50_mode,
            "delay_factor": curve.delay_factor,
            "wave_zone": _wave_zone(t_hat, curve),
            "waves": [
                {"ceiling": w.ceiling, "steepness_per_month": w.steepness, "midpoint_months": w.midpoint}
                for w in curve.waves
            ],
        },
        "valuation": {
            "phi": phi,
            "vendor_only": firm.vendor_only,
            "exit_multiple": baseline.exit_multiple,
            "wacc": baseline.wacc,
            "pools": [
                {
                    "pool": p.pool_id,
                    "uplift_fraction": p.uplift_fraction,
                    "baseline_b": p.baseline_b,
                    "bottleneck": p.bottleneck,
                    "capture": p.capture,
                    "value_b_per_year": p.value_b,
                }
                for p in pool_values
            ],
            "captures_rescaled": rescaled,
            "pool_sum_b_per_year": pool_sum,
            "ifs_residual": ifs_res,
            "delta_r": dr_f,
            "tv_b": tv,
            "fcf_interim_b": fcf,
            "impl_cost_b": impl_cost,
            "npv_cost_b": cost_npv_b,
            "cost_basis": cost_basis,
            "delta_ev_b": dev,
            "value_density": vd,
            "tier": tier,
            "units": "USD-billions",
        },
        "disruption": {
            "moat": moat_f,
            "urgency": urgency,
            "adri": adri_score,
            "classification": classify(adri_score),
            "hazard_per_year": hazard(adri_score, adri_cfg),
            "displacement_24mo": cumulative_displacement(adri_score, 24.0, adri_cfg),
        },
    }
    return report


def _firm_record(firm: FirmProfile) -> dict[str, Any]:
    return {
        "id": firm.firm_id,
        "name": firm.name,
        "industry": firm.industry_id,
        "revenue_b": firm.revenue_b,
        "wacc": firm.wacc,
        "dims": dict(firm.dims),
        "tiers": dict(firm.tiers),
        "ifs": {k: getattr(firm.ifs, k) for k in ("occ", "dr", "vtr", "crs", "reg")},
        "moat": {
            "switching_costs": firm.moat.switching_costs,
            "network_effects": firm.moat.network_effects,
            "regulatory_barriers": firm.moat.regulatory_barriers,
            "proprietary_data": firm.moat.proprietary_data,
        },
        "vendor_only": firm.vendor_only,
        "exit_multiple": firm.exit_multiple,
        "s_star_b": firm.s_star_b,
        "t_hat_months": firm.t_hat_months,
        "pool_uplifts": dict(firm.pool_uplifts),
        "cost_streams": [
            {"year": s.year, "capex_b": s.capex, "opex_b": s.opex} for s in firm.cost_streams
        ],
    }


_IFS_KEYS = {"ifs_occ": "occ", "ifs_dr": "dr", "ifs_vtr": "vtr", "ifs_crs": "crs", "ifs_reg": "reg"}
_FIRM_KEYS = {"exit_multiple", "t_hat_months", "vendor_only"}


def _apply_overrides(
    firm: FirmProfile, cfg: RunConfig, overrides: Mapping[str, Any]
) -> tuple[FirmProfile, RunConfig]:
    from dataclasses import replace as dc_replace

    from .scorecard import IfsFactors

    ifs_patch = {}
    firm_patch: dict[str, Any] = {}
    cfg_patch: dict[str, Any] = {}
    for key, value in overrides.items():
        if key in _IFS_KEYS:
            ifs_patch[_IFS_KEYS[key]] = float(value)
        elif key in _FIRM_KEYS:
            firm_patch[key] = value
        elif key in RunConfig.__dataclass_fields__:
            cfg_patch[key] = tuple(value) if isinstance(value, list) else value
        else:
            raise PipelineError("overrides", f"unknown override key {key!r}")
    if ifs_patch:
        current = {k: getattr(firm.ifs, k) for k in ("occ", "dr", "vtr", "crs", "reg")}
        current.update(ifs_patch)
        firm_patch["ifs"] = IfsFactors(**current)
    if firm_patch:
        firm = dc_replace(firm, **firm_patch)
    if cfg_patch:
        cfg = cfg.replace(**cfg_patch)
    return firm, cfg


def build_perturbation_closure(
    bundle: WorkspaceBundle,
    firm_id: str,
    config: RunConfig | None = None,
) -> tuple[Callable[[Mapping[str, float]], float], dict[str, float]]:
    """Build the five-input closure used by Monte Carlo and Sobol runs.

    The closure maps raw sampled values of (capture_rate multiplier, exit
    multiple, effective gap, residual multiplier, implementation cost) to
    risk-adjusted value creation, re-running the trajectory inversion and
    the full bridge per draw. Firms with a pinned curve position keep it
    pinned across draws. Returns the closure plus the base values of the
    five inputs.
    """
    if firm_id not in bundle.firms:
        raise PipelineError("workspace", f"unknown firm id {firm_id!r}")
    firm = bundle.firms[firm_id]
    cfg = config or bundle.run_config
    industry = bundle.industries[firm.industry_id]

    afc = compute_afc(industry.theta, cfg.c_t, AfcConfig(cfg.c_0, cfg.alpha_max))
    iass_star = adjusted_ceiling(industry.iass_base, afc)
    scores = FirmDimensionScores(scores=firm.dims, tiers=firm.tiers)
    aitg_base = aitg_raw(scores)
    _, g_eff_base = ir_and_gap(aitg_base, iass_star)
    baseline = _baseline_for(firm, industry, cfg)
    phi = firm_scale(baseline)
    ifs_res_base = ifs_residual(firm.ifs)
    impl_cost_base, _, _ = _cost_terms(firm, baseline, cfg)
    ces_cfg = CesConfig(rho=cfg.ces_rho, floor=cfg.ces_floor)

    pool_static = []
    for pool in bundle.pools:
        e = [max(firm.dims[d] / 10.0, ces_cfg.floor) for d in pool.dims]
        b = ces_bottleneck(e, pool.weights(), ces_cfg)
        uplift = firm.pool_uplifts.get(pool.pool_id, pool.uplift_fraction)
        pool_static.append((pool.base_capture, b, uplift))

    factors = IfsTrajectoryFactors(occ=firm.ifs.occ, dr=firm.ifs.dr)
    base_curve = _curve_for(firm, afc, cfg, aitg_base)
    delay = base_curve.delay_factor

    bases = {
        "capture_rate": 1.0,
        "exit_multiple": baseline.exit_multiple,
        "gap": g_eff_base,
        "ifs_residual": ifs_res_base,
        "impl_cost": impl_cost_base,
    }

    def closure(inputs: Mapping[str, float]) -> float:
        g = max(0.0, inputs["gap"])
        aitg_draw = min(max(iass_star - g, _SCORE_MARGIN), min(10.0, base_curve.total_ceiling) - _SCORE_MARGIN)
        if cfg.t50_mode == "score_dependent":
            t50 = variable_t50_base(aitg_draw) * delay
        else:
            t50 = base_curve.t50
        if firm.t_hat_months is not None:
            t_hat = firm.t_hat_months
        else:
            t_hat = invert(aitg_draw, base_curve)
        mult = inputs["capture_rate"]
        raw = [capture(g, kappa * mult, b, cfg.capture_lambda) for kappa, b, _ in pool_static]
        captures, _ = rescale_captures(raw)
        pool_sum = sum(
            pool_value(uplift, firm.revenue_b, phi, c)
            for (_, _, uplift), c in zip(pool_static, captures)
        )
        ifs_res = min(1.0, max(1e-6, inputs["ifs_residual"]))
        dr_f = delta_r(t_hat, t50, cfg.hold_months, cfg.ramp_steepness)
        tv = terminal_value(pool_sum, dr_f, max(0.0, inputs["exit_multiple"]), ifs_res)
        fcf = fcf_interim(pool_sum, t_hat, t50, ifs_res, baseline.wacc, cfg.ramp_steepness)
        cost = max(0.0, inputs["impl_cost"]) / (1.0 + baseline.wacc)
        return delta_ev(tv, fcf, cost)

    return closure, bases


def build_ct_closure(
    bundle: WorkspaceBundle, firm_id: str, config: RunConfig | None = None
) -> Callable[[float], float]:
    """Value creation as a function of the capability index.

    Used for the numerical frontier-sensitivity derivative: each call
    re-runs the full evaluation with the capability index replaced.
    """
    cfg = config or bundle.run_config

    def closure(c_t: float) -> float:
        report = evaluate_firm(bundle, firm_id, cfg.replace(c_t=c_t))
        return report["valuation"]["delta_ev_b"]

    return closure


def report_content_id(report: Mapping[str, Any]) -> str:
    """Content-addressed report id (stable across timestamps)."""
    trimmed = {k: v for k, v in report.items() if k != "created_at"}
    return _canonical_digest(trimmed)
