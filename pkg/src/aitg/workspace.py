"""Workspace ingestion and validation.

A workspace is a single self-describing JSON document with an embedded
schema version: the industry calibration registry, the standard value
pool parameters, firm profiles, survey fixtures, the backtest panel, and
the default run configuration. Everything is cross-validated at load;
there is no partial state on failure.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence

from .calibration import DIMENSIONS, CalibrationError, DimensionWeights, IndustryCalibration
from .scorecard import EVIDENCE_TIERS, FIRM_DIMENSIONS, IfsFactors, ScorecardError
from .disruption import MoatFactors
from .valuation import CostStream, ValuePoolSpec, ValuationError

__all__ = [
    "SCHEMA_VERSION",
    "WorkspaceError",
    "FirmProfile",
    "RunConfig",
    "WorkspaceBundle",
    "load_workspace",
    "bundled_workspace_path",
]

SCHEMA_VERSION = 1


class WorkspaceError(ValueError):
    """Raised when a workspace file fails validation; message carries context."""


@dataclass(frozen=True)
class RunConfig:
    """Engine constants for one evaluation run.

    All values are overridable per run; the workspace carries the
    defaults. ``t50_mode`` selects the constant 18-month ramp base or the
    score-dependent variant used by the simulation configuration.
    """

    c_t: float = 1.90
    c_0: float = 1.0
    alpha_max: float = 1.35
    hold_months: float = 60.0
    t50_mode: str = "constant"
    t50_base: float = 18.0
    ramp_steepness: float = 0.18
    capture_lambda: float = 3.5
    ces_rho: float = 5.0
    ces_floor: float = 0.01
    scale_alpha: float = 2.0
    adri_normalization: float = 20.25
    hazard_scale: float = 100.0
    cost_proxy_rate: float = 0.012
    ceiling_exponents: tuple[float, float, float] = (0.25, 0.50, 1.00)
    onset_exponents: tuple[float, float, float] = (0.10, 0.20, 0.30)
    uq_model: float = 0.25
    uq_interrater: float = 0.20
    scenario_afc: tuple[float, float, float] = (1.04, 1.10, 1.22)
    scenario_weights: tuple[float, float, float] = (0.20, 0.60, 0.20)
    mc_draws: int = 10_000
    mc_seed: int = 0

    def __post_init__(self) -> None:
        if self.t50_mode not in ("constant", "score_dependent"):
            raise WorkspaceError(f"unknown t50 mode {self.t50_mode!r}")
        if self.c_t <= 0 or self.c_0 <= 0:
            raise WorkspaceError("capability levels must be positive")
        if self.hold_months <= 0:
            raise WorkspaceError("hold period must be positive")

    def replace(self, **overrides: Any) -> "RunConfig":
        data = {k: getattr(self, k) for k in self.__dataclass_fields__}
        data.update(overrides)
        return RunConfig(**data)


@dataclass(frozen=True)
class FirmProfile:
    """One firm's declarative inputs.

    ``t_hat_months`` optionally pins the implied curve position instead of
    inverting the observed composite; ``pool_uplifts`` override the
    standard pool uplift fractions; ``exit_multiple`` and ``s_star_b``
    override the industry defaults.
    """

    firm_id: str
    name: str
    industry_id: str
    revenue_b: float
    wacc: float
    dims: Mapping[str, float]
    tiers: Mapping[str, str]
    ifs: IfsFactors
    moat: MoatFactors
    vendor_only: bool = False
    exit_multiple: float | None = None
    s_star_b: float | None = None
    t_hat_months: float | None = None
    pool_uplifts: Mapping[str, float] = field(default_factory=dict)
    cost_streams: tuple[CostStream, ...] = ()

    def __post_init__(self) -> None:
        if self.revenue_b <= 0:
            raise WorkspaceError(f"firm {self.firm_id}: revenue must be positive")
        if self.wacc < 0:
            raise WorkspaceError(f"firm {self.firm_id}: wacc must be nonnegative")
        for d in FIRM_DIMENSIONS:
            if d not in self.dims:
                raise WorkspaceError(f"firm {self.firm_id}: missing dimension {d!r}")
            v = self.dims[d]
            if not (0.0 <= v <= 10.0):
                raise WorkspaceError(f"firm {self.firm_id}: dimension {d}={v} outside [0, 10]")
            if self.tiers.get(d) not in EVIDENCE_TIERS:
                raise WorkspaceError(f"firm {self.firm_id}: invalid tier for {d!r}")
        if self.exit_multiple is not None and self.exit_multiple <= 0:
            raise WorkspaceError(f"firm {self.firm_id}: exit multiple must be positive")
        if self.s_star_b is not None and self.s_star_b <= 0:
            raise WorkspaceError(f"firm {self.firm_id}: critical scale must be positive")
        for pool_id, uplift in self.pool_uplifts.items():
            if uplift < 0:
                raise WorkspaceError(f"firm {self.firm_id}: uplift for {pool_id!r} negative")


@dataclass(frozen=True)
class WorkspaceBundle:
    """A fully validated workspace."""

    schema_version: int
    industries: Mapping[str, IndustryCalibration]
    pools: tuple[ValuePoolSpec, ...]
    firms: Mapping[str, FirmProfile]
    run_config: RunConfig
    weights: DimensionWeights
    published: Mapping[str, Mapping[str, float]]
    capability: Mapping[str, Any]
    backtest: Mapping[str, Any]
    surveys: Mapping[str, Any]
    rank_anchors: tuple[str, ...]
    source_path: str

    def industry_for(self, firm: FirmProfile) -> IndustryCalibration:
        return self.industries[firm.industry_id]

    def with_firm(self, profile: FirmProfile) -> "WorkspaceBundle":
        """Return a new bundle with one firm profile replaced or added."""
        if profile.industry_id not in self.industries:
            raise WorkspaceError(
                f"firm {profile.firm_id}: unknown industry id {profile.industry_id!r}"
            )
        firms = dict(self.firms)
        firms[profile.firm_id] = profile
        return WorkspaceBundle(
            schema_version=self.schema_version,
            industries=self.industries,
            pools=self.pools,
            firms=firms,
            run_config=self.run_config,
            weights=self.weights,
            published=self.published,
            capability=self.capability,
            backtest=self.backtest,
            surveys=self.surveys,
            rank_anchors=self.rank_anchors,
            source_path=self.source_path,
        )


def _require(mapping: Mapping[str, Any], key: str, context: str) -> Any:
    if key not in mapping:
        raise WorkspaceError(f"{context}: missing field {key!r}")
    return mapping[key]


def _parse_industry(record: Mapping[str, Any], weights: DimensionWeights) -> IndustryCalibration:
    context = f"industry {record.get('id', '?')!r}"
    scores = _require(record, "scores", context)
    try:
        return IndustryCalibration(
            industry_id=_require(record, "id", context),
            name=_require(record, "name", context),
            naics=str(_require(record, "naics", context)),
            scores={d: float(scores[d]) for d in DIMENSIONS},
            psi=float(_require(record, "psi", context)),
            theta=float(_require(record, "theta", context)),
            s_star_b=float(_require(record, "s_star_b", context)),
            exit_multiple=float(_require(record, "exit_multiple", context)),
            weights=weights,
        )
    except (KeyError, CalibrationError, TypeError) as exc:
        raise WorkspaceError(f"{context}: {exc}") from exc


def _parse_pool(record: Mapping[str, Any]) -> ValuePoolSpec:
    context = f"value pool {record.get('id', '?')!r}"
    try:
        return ValuePoolSpec(
            pool_id=_require(record, "id", context),
            name=_require(record, "name", context),
            uplift_fraction=float(_require(record, "uplift_default", context)),
            base_capture=float(_require(record, "base_capture", context)),
            dims=tuple(_require(record, "dims", context)),
        )
    except (ValuationError, TypeError) as exc:
        raise WorkspaceError(f"{context}: {exc}") from exc


def _parse_firm(record: Mapping[str, Any]) -> FirmProfile:
    context = f"firm {record.get('id', '?')!r}"
    try:
        ifs_rec = _require(record, "ifs", context)
        moat_rec = _require(record, "moat", context)
        streams = tuple(
            CostStream(year=int(s["year"]), capex=float(s.get("capex_b", 0.0)), opex=float(s.get("opex_b", 0.0)))
            for s in record.get("cost_streams", [])
        )
        return FirmProfile(
            firm_id=_require(record, "id", context),
            name=_require(record, "name", context),
            industry_id=_require(record, "industry", context),
            revenue_b=float(_require(record, "revenue_b", context)),
            wacc=float(record.get("wacc", 0.09)),
            dims={d: float(_require(record, "dims", context)[d]) for d in FIRM_DIMENSIONS},
            tiers={d: str(_require(record, "tiers", context)[d]) for d in FIRM_DIMENSIONS},
            ifs=IfsFactors(
                occ=float(ifs_rec["occ"]),
                dr=float(ifs_rec["dr"]),
                vtr=float(ifs_rec["vtr"]),
                crs=float(ifs_rec["crs"]),
                reg=float(ifs_rec["reg"]),
            ),
            moat=MoatFactors(
                switching_costs=float(moat_rec["switching_costs"]),
                network_effects=float(moat_rec["network_effects"]),
                regulatory_barriers=float(moat_rec["regulatory_barriers"]),
                proprietary_data=float(moat_rec["proprietary_data"]),
            ),
            vendor_only=bool(record.get("vendor_only", False)),
            exit_multiple=(float(record["exit_multiple"]) if "exit_multiple" in record else None),
            s_star_b=(float(record["s_star_b"]) if "s_star_b" in record else None),
            t_hat_months=(float(record["t_hat_months"]) if "t_hat_months" in record else None),
            pool_uplifts={k: float(v) for k, v in record.get("pool_uplifts", {}).items()},
            cost_streams=streams,
        )
    except (KeyError, ScorecardError, WorkspaceError, ValuationError, ValueError, TypeError) as exc:
        raise WorkspaceError(f"{context}: {exc}") from exc


def parse_workspace(doc: Mapping[str, Any], source: str = "<memory>") -> WorkspaceBundle:
    """Validate a parsed workspace document into a bundle."""
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise WorkspaceError(
            f"{source}: schema version {version!r} unsupported (engine speaks {SCHEMA_VERSION})"
        )
    weights_rec = doc.get("dimension_weights")
    try:
        weights = DimensionWeights(dict(weights_rec)) if weights_rec else DimensionWeights()
    except CalibrationError as exc:
        raise WorkspaceError(f"{source}: dimension weights: {exc}") from exc

    industries: dict[str, IndustryCalibration] = {}
    published: dict[str, dict[str, float]] = {}
    for record in _require(doc, "industries", source):
        cal = _parse_industry(record, weights)
        if cal.industry_id in industries:
            raise WorkspaceError(f"{source}: duplicate industry id {cal.industry_id!r}")
        industries[cal.industry_id] = cal
        pub = {}
        if "published_iass" in record:
            pub["iass"] = float(record["published_iass"])
        if "published_iass_star" in record:
            pub["iass_star"] = float(record["published_iass_star"])
        published[cal.industry_id] = pub

    pools = tuple(_parse_pool(rec) for rec in _require(doc, "value_pools", source))
    if len({p.pool_id for p in pools}) != len(pools):
        raise WorkspaceError(f"{source}: duplicate value pool ids")
    pool_ids = {p.pool_id for p in pools}
    for p in pools:
        unknown = [d for d in p.dims if d not in FIRM_DIMENSIONS]
        if unknown:
            raise WorkspaceError(f"{source}: pool {p.pool_id!r} gates unknown dimensions {unknown}")

    firms: dict[str, FirmProfile] = {}
    for record in _require(doc, "firms", source):
        firm = _parse_firm(record)
        if firm.firm_id in firms:
            raise WorkspaceError(f"{source}: duplicate firm id {firm.firm_id!r}")
        if firm.industry_id not in industries:
            raise WorkspaceError(
                f"{source}: firm {firm.firm_id!r} references unknown industry id {firm.industry_id!r}"
            )
        for pool_id in firm.pool_uplifts:
            if pool_id not in pool_ids:
                raise WorkspaceError(
                    f"{source}: firm {firm.firm_id!r} overrides unknown pool {pool_id!r}"
                )
        firms[firm.firm_id] = firm

    try:
        run_config = RunConfig(**{
            k: (tuple(v) if isinstance(v, list) else v)
            for k, v in doc.get("run_config", {}).items()
        })
    except (TypeError, WorkspaceError) as exc:
        raise WorkspaceError(f"{source}: run config: {exc}") from exc

    anchors = tuple(doc.get("rank_anchors", ()))
    for a in anchors:
        if a not in industries:
            raise WorkspaceError(f"{source}: rank anchor {a!r} is not a calibrated industry")

    return WorkspaceBundle(
        schema_version=version,
        industries=industries,
        pools=pools,
        firms=firms,
        run_config=run_config,
        weights=weights,
        published=published,
        capability=copy.deepcopy(doc.get("capability", {})),
        backtest=copy.deepcopy(doc.get("backtest", {})),
        surveys=copy.deepcopy(doc.get("surveys", {})),
        rank_anchors=anchors,
        source_path=source,
    )


def load_workspace(path: str | Path | None = None) -> WorkspaceBundle:
    """Load and validate a workspace file; defaults to the bundled reference.

    Raises WorkspaceError with file context on parse failures, unknown
    cross-references, or invariant violations. No partial state escapes.
    """
    src = Path(path) if path is not None else bundled_workspace_path()
    try:
        text = src.read_text(encoding="utf-8")
    except OSError as exc:
        raise WorkspaceError(f"{src}: cannot read workspace: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"{src}:{exc.lineno}: invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise WorkspaceError(f"{src}: workspace root must be an object")
    return parse_workspace(doc, source=str(src))


def bundled_workspace_path() -> Path:
    """Path of the reference workspace shipped with the package."""
    return Path(str(resources.files("aitg").joinpath("data/workspace.json")))
