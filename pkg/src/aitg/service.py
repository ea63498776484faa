"""Local JSON service backing the analyst UI.

Stateless between requests apart from the loaded workspace and an
append-only report archive. Profile mutations pass through a
single-writer lock with read snapshots; every evaluation path calls the
same engine function as the CLI.
"""

from __future__ import annotations

import threading
import time
from typing import Any, Mapping

from fastapi import FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__ as ENGINE_VERSION
from .pipeline import (
    PipelineError,
    build_perturbation_closure,
    default_mc_specs,
    evaluate_firm,
    report_content_id,
)
from .scorecard import ScorecardError, SurveyAnswer, SurveyResponse, score_survey
from .sensitivity import McConfig, SensitivityError, mc_delta_ev
from .workspace import FirmProfile, WorkspaceBundle, WorkspaceError, load_workspace
from .scorecard import IfsFactors
from .disruption import MoatFactors

__all__ = ["create_app", "PARAMETER_REGISTER"]

#: Override bounds surfaced to clients; the single source of truth for UI
#: slider ranges. Engine-side validation enforces the same limits.
PARAMETER_REGISTER: dict[str, dict[str, Any]] = {
    "exit_multiple": {"min": 0.5, "max": 30.0, "step": 0.5, "unit": "x", "label": "Exit multiple"},
    "ifs_occ": {"min": 0.50, "max": 1.00, "step": 0.01, "unit": "fraction", "label": "Org change capacity"},
    "ifs_dr": {"min": 0.50, "max": 1.00, "step": 0.01, "unit": "fraction", "label": "Data readiness"},
    "ifs_vtr": {"min": 0.50, "max": 1.00, "step": 0.01, "unit": "fraction", "label": "Vendor/tech risk"},
    "ifs_crs": {"min": 0.50, "max": 1.00, "step": 0.01, "unit": "fraction", "label": "Competitive response"},
    "ifs_reg": {"min": 0.50, "max": 1.00, "step": 0.01, "unit": "fraction", "label": "Regulatory exposure"},
    "ces_rho": {"min": 1.0, "max": 10.0, "step": 0.5, "unit": "dimensionless", "label": "Bottleneck elasticity parameter"},
    "capture_lambda": {"min": 2.0, "max": 5.0, "step": 0.1, "unit": "dimensionless", "label": "Capture concavity"},
    "c_t": {"min": 0.9, "max": 2.5, "step": 0.05, "unit": "index", "label": "Capability index"},
}


class SurveyAnswerBody(BaseModel):
    question: int = Field(ge=1, le=25)
    answer: int = Field(default=0, ge=0, le=4)
    evidence: bool = False
    citation: str = ""
    sub_answers: dict[str, int] | None = None


class SurveyBody(BaseModel):
    answers: list[SurveyAnswerBody]


class EvaluateBody(BaseModel):
    firm_id: str
    overrides: dict[str, Any] = Field(default_factory=dict)


class WhatIfGridBody(BaseModel):
    firm_id: str
    x_key: str = "ifs_occ"
    y_key: str = "ifs_dr"
    x_values: list[float] = Field(default_factory=list)
    y_values: list[float] = Field(default_factory=list)
    overrides: dict[str, Any] = Field(default_factory=dict)


class McBody(BaseModel):
    firm_id: str
    seed: int = 0
    draws: int = Field(default=10_000, ge=1, le=200_000)
    t50_mode: str | None = None
    overrides: dict[str, Any] = Field(default_factory=dict)


class FirmBody(BaseModel):
    id: str
    name: str
    industry: str
    revenue_b: float
    wacc: float = 0.09
    dims: dict[str, float]
    tiers: dict[str, str]
    ifs: dict[str, float]
    moat: dict[str, float]
    vendor_only: bool = False
    exit_multiple: float | None = None
    s_star_b: float | None = None
    t_hat_months: float | None = None
    pool_uplifts: dict[str, float] = Field(default_factory=dict)


def _error_body(status: int, message: str, field_path: str = "") -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": {"message": message, "field_path": field_path}},
    )


def create_app(bundle: WorkspaceBundle | None = None) -> FastAPI:
    """Build the service application around a loaded workspace."""
    state_bundle = bundle if bundle is not None else load_workspace()
    app = FastAPI(title="aitg", version=ENGINE_VERSION)
    lock = threading.Lock()
    archive: list[dict[str, Any]] = []
    holder = {"bundle": state_bundle}

    def snapshot() -> WorkspaceBundle:
        with lock:
            return holder["bundle"]

    def archive_report(report: dict[str, Any]) -> str:
        rid = report_content_id(report)
        entry = {"id": rid, "created_at": time.time(), "report": report}
        with lock:
            if all(e["id"] != rid for e in archive):
                archive.append(entry)
        return rid

    @app.exception_handler(PipelineError)
    async def _pipeline_error(_, exc: PipelineError):
        return _error_body(422, str(exc), field_path=exc.stage)

    @app.exception_handler(WorkspaceError)
    async def _workspace_error(_, exc: WorkspaceError):
        return _error_body(422, str(exc))

    @app.exception_handler(ScorecardError)
    async def _scorecard_error(_, exc: ScorecardError):
        return _error_body(422, str(exc))

    @app.exception_handler(SensitivityError)
    async def _sensitivity_error(_, exc: SensitivityError):
        return _error_body(422, str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        path = ".".join(str(p) for p in first.get("loc", ()))
        return _error_body(400, first.get("msg", "invalid request body"), field_path=path)

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok", "engine_version": ENGINE_VERSION}

    @app.get("/register")
    def register() -> dict[str, Any]:
        return {"parameters": PARAMETER_REGISTER, "engine_version": ENGINE_VERSION}

    @app.get("/industries")
    def industries() -> dict[str, Any]:
        b = snapshot()
        return {
            "industries": [
                {
                    "id": ind.industry_id,
                    "name": ind.name,
                    "naics": ind.naics,
                    "scores": dict(ind.scores),
                    "psi": ind.psi,
                    "theta": ind.theta,
                    "s_star_b": ind.s_star_b,
                    "exit_multiple": ind.exit_multiple,
                    "iass_base": ind.iass_base,
                }
                for ind in b.industries.values()
            ]
        }

    @app.get("/firms")
    def firms() -> dict[str, Any]:
        b = snapshot()
        return {"firms": [{"id": f.firm_id, "name": f.name, "industry": f.industry_id} for f in b.firms.values()]}

    @app.get("/firms/{firm_id}")
    def get_firm(firm_id: str) -> dict[str, Any]:
        b = snapshot()
        if firm_id not in b.firms:
            raise HTTPException(status_code=404, detail=f"unknown firm id {firm_id!r}")
        f = b.firms[firm_id]
        return {
            "id": f.firm_id,
            "name": f.name,
            "industry": f.industry_id,
            "revenue_b": f.revenue_b,
            "wacc": f.wacc,
            "dims": dict(f.dims),
            "tiers": dict(f.tiers),
            "ifs": {k: getattr(f.ifs, k) for k in ("occ", "dr", "vtr", "crs", "reg")},
            "vendor_only": f.vendor_only,
            "exit_multiple": f.exit_multiple,
            "t_hat_months": f.t_hat_months,
        }

    @app.put("/firms/{firm_id}")
    def put_firm(firm_id: str, body: FirmBody) -> dict[str, Any]:
        if body.id != firm_id:
            return _error_body(400, "body id does not match path id", "id")
        profile = FirmProfile(
            firm_id=body.id,
            name=body.name,
            industry_id=body.industry,
            revenue_b=body.revenue_b,
            wacc=body.wacc,
            dims=body.dims,
            tiers=body.tiers,
            ifs=IfsFactors(**body.ifs),
            moat=MoatFactors(**body.moat),
            vendor_only=body.vendor_only,
            exit_multiple=body.exit_multiple,
            s_star_b=body.s_star_b,
            t_hat_months=body.t_hat_months,
            pool_uplifts=body.pool_uplifts,
        )
        with lock:
            holder["bundle"] = holder["bundle"].with_firm(profile)
        return {"status": "stored", "firm_id": firm_id}

    @app.post("/survey")
    def survey(body: SurveyBody) -> dict[str, Any]:
        resp = SurveyResponse(
            answers=[
                SurveyAnswer(
                    question=a.question,
                    answer=a.answer,
                    evidence=a.evidence,
                    citation=a.citation,
                    sub_answers=a.sub_answers,
                )
                for a in body.answers
            ]
        )
        result = score_survey(resp)
        return {
            "dimensions": dict(result.scores.scores),
            "tiers": dict(result.scores.tiers),
            "ifs": {k: getattr(result.ifs, k) for k in ("occ", "dr", "vtr", "crs", "reg")},
            "capped_questions": list(result.capped_questions),
            "question_scores": {str(k): v for k, v in result.question_scores.items()},
        }

    @app.post("/evaluate")
    def evaluate(body: EvaluateBody) -> dict[str, Any]:
        b = snapshot()
        report = evaluate_firm(b, body.firm_id, overrides=body.overrides or None)
        rid = archive_report(report)
        return {"report_id": rid, "report": report}

    @app.post("/whatif")
    def whatif(body: EvaluateBody) -> dict[str, Any]:
        b = snapshot()
        report = evaluate_firm(b, body.firm_id, overrides=body.overrides or None)
        return {"report": report}

    @app.post("/whatif/grid")
    def whatif_grid(body: WhatIfGridBody) -> dict[str, Any]:
        b = snapshot()
        for key in (body.x_key, body.y_key):
            if key not in PARAMETER_REGISTER:
                return _error_body(400, f"unknown grid parameter {key!r}", key)
        xs = body.x_values or _register_grid(body.x_key)
        ys = body.y_values or _register_grid(body.y_key)
        cells = []
        for y in ys:
            row = []
            for x in xs:
                overrides = dict(body.overrides)
                overrides[body.x_key] = x
                overrides[body.y_key] = y
                report = evaluate_firm(b, body.firm_id, overrides=overrides)
                row.append(report["valuation"]["delta_ev_b"])
            cells.append(row)
        return {"x_key": body.x_key, "y_key": body.y_key, "x_values": xs, "y_values": ys,
                "delta_ev_b": cells}

    @app.post("/mc")
    def mc(body: McBody) -> dict[str, Any]:
        b = snapshot()
        cfg = b.run_config
        if body.t50_mode:
            cfg = cfg.replace(t50_mode=body.t50_mode)
        if body.overrides:
            _, cfg = _split_overrides_for_mc(body.overrides, cfg)
        closure, bases = build_perturbation_closure(b, body.firm_id, cfg)
        summary = mc_delta_ev(
            closure,
            default_mc_specs(cfg),
            bases,
            McConfig(draws=body.draws, seed=body.seed),
        )
        base_value = closure(bases)
        impl_cost = bases["impl_cost"]
        return {
            "firm_id": body.firm_id,
            "seed": summary.seed,
            "draws": summary.draws,
            "percentiles_b": {str(int(k)): v for k, v in summary.percentiles.items()},
            "mean_b": summary.mean,
            "base_delta_ev_b": base_value,
            "vd_p50": summary.percentiles[50.0] / impl_cost if impl_cost > 0 else None,
            "draw_digest": summary.draw_digest,
        }

    @app.get("/reports")
    def reports() -> dict[str, Any]:
        with lock:
            return {"reports": [{"id": e["id"], "created_at": e["created_at"],
                                 "firm": e["report"]["firm"]["id"]} for e in archive]}

    @app.get("/reports/{report_id}")
    def get_report(report_id: str) -> dict[str, Any]:
        with lock:
            for e in archive:
                if e["id"] == report_id:
                    return e
        raise HTTPException(status_code=404, detail=f"unknown report id {report_id!r}")

    return app


def _register_grid(key: str, points: int = 9) -> list[float]:
    spec = PARAMETER_REGISTER[key]
    lo, hi = spec["min"], spec["max"]
    return [lo + (hi - lo) * i / (points - 1) for i in range(points)]


def _split_overrides_for_mc(overrides: Mapping[str, Any], cfg):
    from .workspace import RunConfig

    cfg_patch = {k: v for k, v in overrides.items() if k in RunConfig.__dataclass_fields__}
    return overrides, cfg.replace(**cfg_patch) if cfg_patch else cfg
