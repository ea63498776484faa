"""Command-line surface.

Subcommands mirror the pipeline stages: ``score`` (scorecard line),
``curve`` (trajectory samples and implied position), ``vcb`` (the value
bridge step table), ``adri``, ``afc`` (the frontier multiplier grid),
``mc`` / ``sobol`` / ``rankstab`` / ``backtest`` (uncertainty machinery),
``serve`` (the JSON service), and ``validate``. Exit code 0 on success;
failures print a stage-labeled diagnostic and exit nonzero.
"""

from __future__ import annotations

import json
import sys
from typing import Any

import click

from . import __version__ as ENGINE_VERSION
from .pipeline import PipelineError, build_perturbation_closure, default_mc_specs, evaluate_firm
from .sensitivity import (
    McConfig,
    RankPanel,
    SensitivityError,
    action_signal,
    mc_delta_ev,
    sobol_first_order,
    spearman,
    weight_perturbation_rank_stability,
)
from .frontier import AfcConfig, compute_afc
from .trajectory import aitg_at, build_firm_curve, invert
from .workspace import WorkspaceError, load_workspace

_WORKSPACE_OPTION = click.option(
    "--workspace", "workspace_path", type=click.Path(), default=None,
    help="Workspace file (defaults to the bundled reference).",
)
_FORMAT_OPTION = click.option(
    "--format", "fmt", type=click.Choice(["table", "json"]), default="table",
    help="Output format.",
)


def _load(workspace_path: str | None):
    try:
        return load_workspace(workspace_path)
    except WorkspaceError as exc:
        raise click.ClickException(f"[workspace] {exc}") from exc


def _emit(payload: Any, fmt: str, table_lines: list[str]) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in table_lines:
            click.echo(line)


@click.group()
@click.version_option(version=ENGINE_VERSION, prog_name="aitg")
def main() -> None:
    """Transformation-gap engine: ceilings, trajectories, value, risk."""


@main.command()
@_WORKSPACE_OPTION
@click.option("--firm", "firm_id", required=True, help="Firm id from the workspace.")
@_FORMAT_OPTION
def score(workspace_path: str | None, firm_id: str, fmt: str) -> None:
    """Print the dual-format scorecard line for a firm."""
    bundle = _load(workspace_path)
    try:
        report = evaluate_firm(bundle, firm_id)
    except PipelineError as exc:
        raise click.ClickException(str(exc)) from exc
    _emit(report, fmt, [report["scorecard"]["line"]])


@main.command()
@_WORKSPACE_OPTION
@click.option("--firm", "firm_id", required=True)
@click.option("--score", "score_value", type=float, default=None,
              help="Score to invert (defaults to the firm composite).")
@click.option("--samples", type=int, default=25, show_default=True)
@_FORMAT_OPTION
def curve(workspace_path: str | None, firm_id: str, score_value: float | None, samples: int, fmt: str) -> None:
    """Emit (t, score) samples of the firm-adjusted adoption curve plus the implied position."""
    bundle = _load(workspace_path)
    try:
        report = evaluate_firm(bundle, firm_id)
    except PipelineError as exc:
        raise click.ClickException(str(exc)) from exc
    traj = report["trajectory"]
    firm = bundle.firms[firm_id]
    industry = bundle.industries[firm.industry_id]
    cfg = bundle.run_config
    afc = compute_afc(industry.theta, cfg.c_t, AfcConfig(cfg.c_0, cfg.alpha_max))
    from .trajectory import IfsTrajectoryFactors

    curve_obj = build_firm_curve(
        IfsTrajectoryFactors(firm.ifs.occ, firm.ifs.dr),
        afc=afc,
        t50_base=traj["t50_base_months"],
        ramp_steepness=cfg.ramp_steepness,
        ceiling_exponents=cfg.ceiling_exponents,
        onset_exponents=cfg.onset_exponents,
    )
    target = score_value if score_value is not None else report["scorecard"]["aitg_raw"]
    t_hat = traj["t_hat_months"] if score_value is None and traj["t_hat_source"] == "fixture-override" else invert(
        target, curve_obj
    )
    t_max = curve_obj.waves[-1].midpoint * 2.0
    rows = []
    for i in range(samples):
        t = t_max * i / (samples - 1)
        rows.append((t, aitg_at(t, curve_obj)))
    lines = [f"{'t_months':>10s}  {'score':>8s}"]
    lines += [f"{t:10.1f}  {v:8.4f}" for t, v in rows]
    lines.append(f"implied position for score {target:.2f}: t_hat = {t_hat:.2f} months")
    payload = {"samples": [{"t_months": t, "score": v} for t, v in rows],
               "score": target, "t_hat_months": t_hat, "wave_zone": traj["wave_zone"]}
    _emit(payload, fmt, lines)


@main.command()
@_WORKSPACE_OPTION
@click.option("--firm", "firm_id", required=True)
@_FORMAT_OPTION
def vcb(workspace_path: str | None, firm_id: str, fmt: str) -> None:
    """Print the value-bridge step table for a firm."""
    bundle = _load(workspace_path)
    try:
        report = evaluate_firm(bundle, firm_id)
    except PipelineError as exc:
        raise click.ClickException(str(exc)) from exc
    v = report["valuation"]
    t = report["trajectory"]
    s = report["scorecard"]
    lines = [
        f"Value bridge: {report['firm']['name']} ({report['firm']['id']})",
        f"  1 revenue baseline     : ${bundle.firms[firm_id].revenue_b:.3f}B revenue",
        f"  2 firm scale factor    : {v['phi']:.3f}" + ("  (vendor cap 0.65)" if v["vendor_only"] else ""),
        f"  3 bottlenecks          : " + ", ".join(f"{p['pool']}={p['bottleneck']:.3f}" for p in v["pools"]),
        f"  4 gap fraction         : {s['g_eff'] / 10.0:.4f} (G_eff {s['g_eff']:.2f})",
        f"  5 {'captures (rescaled)' if v['captures_rescaled'] else 'captures':<21s}: "
        + ", ".join(f"{p['pool']}={p['capture']:.3f}" for p in v["pools"]),
        f"  6 pool values ($B/yr)  : " + ", ".join(f"{p['pool']}={p['value_b_per_year']:.4f}" for p in v["pools"]),
        f"  7 ramp midpoint t50    : {t['t50_months']:.1f} months (delay {t['delay_factor']:.2f}x)",
        f"  8 ramp increment       : {v['delta_r']:.3f} (t_hat {t['t_hat_months']:.1f} months)",
        f"  9 residual multiplier  : {v['ifs_residual']:.3f}",
        f" 10 terminal value       : ${v['tv_b']:.3f}B at {v['exit_multiple']:.1f}x exit",
        f"    interim cash flows   : ${v['fcf_interim_b']:.3f}B",
        f"    cost ({v['cost_basis']}): ${v['impl_cost_b']:.3f}B (NPV ${v['npv_cost_b']:.3f}B)",
        f"    value creation       : ${v['delta_ev_b']:.3f}B",
        f"    value density        : {v['value_density']:.1f}x per $ of cost -> {v['tier']}",
    ]
    _emit(report, fmt, lines)


@main.command()
@_WORKSPACE_OPTION
@click.option("--firm", "firm_id", required=True)
@_FORMAT_OPTION
def adri(workspace_path: str | None, firm_id: str, fmt: str) -> None:
    """Print the disruption-risk block for a firm."""
    bundle = _load(workspace_path)
    try:
        report = evaluate_firm(bundle, firm_id)
    except PipelineError as exc:
        raise click.ClickException(str(exc)) from exc
    d = report["disruption"]
    lines = [
        f"Disruption risk: {report['firm']['name']}",
        f"  moat {d['moat']:.3f} | urgency {d['urgency']:.2f} | index {d['adri']:.2f} ({d['classification']})",
        f"  hazard {d['hazard_per_year']:.4f}/yr | 24-month displacement probability {d['displacement_24mo']:.3f}",
    ]
    _emit(report["disruption"], fmt, lines)


@main.command()
@click.option("--theta", "thetas", type=float, multiple=True,
              default=(0.08, 0.11, 0.14, 0.22, 0.28, 0.31, 0.50, 1.00), show_default=True)
@click.option("--ct", "cts", type=float, multiple=True,
              default=(0.90, 1.00, 1.20, 1.50, 1.70, 1.90, 2.10), show_default=True)
@_FORMAT_OPTION
def afc(thetas: tuple[float, ...], cts: tuple[float, ...], fmt: str) -> None:
    """Print the frontier multiplier grid over (theta, C_t) pairs."""
    cfg = AfcConfig()
    header = "theta   " + "  ".join(f"{c:6.2f}" for c in cts)
    lines = [header]
    cells = []
    for th in thetas:
        row = [compute_afc(th, c, cfg) for c in cts]
        cells.append(row)
        rendered = "  ".join(
            f"{v:5.3f}" + ("+" if 1.0 + th * (c - cfg.c_0) >= cfg.alpha_max else " ")
            for v, c in zip(row, cts)
        )
        lines.append(f"{th:5.2f}  {rendered}")
    lines.append("(+ marks cells capped at alpha_max = 1.35)")
    payload = {"thetas": list(thetas), "c_ts": list(cts), "afc": cells}
    _emit(payload, fmt, lines)


@main.command()
@_WORKSPACE_OPTION
@click.option("--firm", "firm_id", required=True)
@click.option("--seed", type=int, required=True, help="Master seed (mandatory for reproducibility).")
@click.option("--draws", type=int, default=10_000, show_default=True)
@click.option("--t50-mode", type=click.Choice(["constant", "score_dependent"]), default=None)
@_FORMAT_OPTION
def mc(workspace_path: str | None, firm_id: str, seed: int, draws: int, t50_mode: str | None, fmt: str) -> None:
    """Seeded Monte Carlo distribution of value creation."""
    bundle = _load(workspace_path)
    cfg = bundle.run_config if t50_mode is None else bundle.run_config.replace(t50_mode=t50_mode)
    try:
        closure, bases = build_perturbation_closure(bundle, firm_id, cfg)
        summary = mc_delta_ev(closure, default_mc_specs(cfg), bases, McConfig(draws=draws, seed=seed))
    except (PipelineError, SensitivityError) as exc:
        raise click.ClickException(f"[sensitivity] {exc}") from exc
    p = summary.percentiles
    vd_p50 = p[50.0] / bases["impl_cost"]
    signal = action_signal(p[10.0], p[50.0], vd_p50)
    lines = [
        f"Monte Carlo ({summary.draws} draws, seed {summary.seed}): {firm_id}",
        f"  P10 ${p[10.0]:.3f}B | P50 ${p[50.0]:.3f}B | P90 ${p[90.0]:.3f}B | P90/P10 {summary.ratio():.2f}x",
        f"  mean ${summary.mean:.3f}B | VD at P50 {vd_p50:.1f}x | action signal: {signal}",
        f"  draw digest {summary.draw_digest[:16]}",
    ]
    payload = {
        "firm_id": firm_id, "seed": summary.seed, "draws": summary.draws,
        "percentiles_b": {str(int(k)): v for k, v in p.items()},
        "mean_b": summary.mean, "vd_p50": vd_p50, "action_signal": signal,
        "draw_digest": summary.draw_digest,
    }
    _emit(payload, fmt, lines)


@main.command()
@_WORKSPACE_OPTION
@click.option("--firm", "firm_id", required=True)
@click.option("--seed", type=int, required=True)
@click.option("--draws", type=int, default=20_000, show_default=True)
@_FORMAT_OPTION
def sobol(workspace_path: str | None, firm_id: str, seed: int, draws: int, fmt: str) -> None:
    """First-order variance decomposition of value creation."""
    bundle = _load(workspace_path)
    try:
        closure, bases = build_perturbation_closure(bundle, firm_id)
        result = sobol_first_order(closure, default_mc_specs(bundle.run_config), bases,
                                   McConfig(draws=draws, seed=seed))
    except (PipelineError, SensitivityError) as exc:
        raise click.ClickException(f"[sensitivity] {exc}") from exc
    ordered = sorted(result.first_order.items(), key=lambda kv: -kv[1])
    lines = [f"First-order indices ({result.draws} draws, seed {seed}): {firm_id}"]
    lines += [f"  {name:14s} {value:7.4f}" for name, value in ordered]
    _emit({"firm_id": firm_id, "first_order": dict(ordered), "draws": result.draws}, fmt, lines)


@main.command()
@_WORKSPACE_OPTION
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--draws", type=int, default=10_000, show_default=True)
@click.option("--half-width", type=float, default=0.05, show_default=True)
@_FORMAT_OPTION
def rankstab(workspace_path: str | None, seed: int, draws: int, half_width: float, fmt: str) -> None:
    """Ceiling rank stability of the anchor industries under weight perturbation."""
    bundle = _load(workspace_path)
    panel = RankPanel(item_ids=bundle.rank_anchors, half_width=half_width)
    result = weight_perturbation_rank_stability(list(bundle.industries.values()), panel, draws, seed)
    lines = [
        f"Rank stability ({draws} draws, +/-{half_width} weight perturbation)",
        f"  mean absolute rank shift: {result.mean_rank_shift:.4f}",
        f"  total pairwise swaps: {result.total_swaps}",
    ]
    for pair, freq in result.swap_frequency.items():
        lines.append(f"  swap {pair[0]} <-> {pair[1]}: {freq:.4f}")
    payload = {
        "mean_rank_shift": result.mean_rank_shift,
        "total_swaps": result.total_swaps,
        "swap_frequency": {f"{a}|{b}": v for (a, b), v in result.swap_frequency.items()},
        "baseline_ranks": dict(result.baseline_ranks),
    }
    _emit(payload, fmt, lines)


@main.command()
@_WORKSPACE_OPTION
@_FORMAT_OPTION
def backtest(workspace_path: str | None, fmt: str) -> None:
    """Spearman rank correlation on the bundled retrospective panel."""
    bundle = _load(workspace_path)
    panel = bundle.backtest
    if not panel:
        raise click.ClickException("[workspace] no backtest panel in workspace")
    items = panel["items"]
    rho = spearman([i["score"] for i in items], [i["outcome"] for i in items])
    lines = [
        f"Backtest: {panel['name']} (n = {len(items)})",
        f"  Spearman rho = {rho:.3f}",
    ]
    _emit({"name": panel["name"], "n": len(items), "spearman": rho}, fmt, lines)


@main.command()
@_WORKSPACE_OPTION
def validate(workspace_path: str | None) -> None:
    """Load and cross-validate a workspace; exit nonzero on any violation."""
    bundle = _load(workspace_path)
    problems: list[str] = []
    for iid, cal in bundle.industries.items():
        pub = bundle.published.get(iid, {})
        if "iass" in pub and abs(cal.iass_base - pub["iass"]) > 0.02:
            problems.append(f"[calibration] {iid}: recomputed ceiling {cal.iass_base:.4f} "
                            f"vs published {pub['iass']:.2f}")
    for fid in bundle.firms:
        try:
            evaluate_firm(bundle, fid)
        except PipelineError as exc:
            problems.append(str(exc))
    if problems:
        for p in problems:
            click.echo(p, err=True)
        raise SystemExit(1)
    click.echo(
        f"workspace ok: {len(bundle.industries)} industries, {len(bundle.pools)} pools, "
        f"{len(bundle.firms)} firms"
    )


@main.command()
@_WORKSPACE_OPTION
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8321, show_default=True)
def serve(workspace_path: str | None, host: str, port: int) -> None:
    """Run the local JSON service."""
    import uvicorn

    from .service import create_app

    bundle = _load(workspace_path)
    uvicorn.run(create_app(bundle), host=host, port=port, log_level="info")


if __name__ == "__main__":
    main(prog_name="aitg")
