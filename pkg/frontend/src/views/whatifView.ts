/**
 * What-if panel rendering: override sliders bounded by the engine
 * register, the value waterfall, density gauge, risk badge, and the
 * readiness heatmap. All displayed numbers are served values.
 */

import type { ParameterBounds, PipelineReport, WhatIfGridResponse } from "../api/types.js";
import { gaugeNeedle, gaugeTick, heatShades, riskColor, waterfallBars } from "../charts/geometry.js";

export interface SliderSpec {
  key: string;
  bounds: ParameterBounds;
  value: number;
}

export function renderSlider(spec: SliderSpec): string {
  const b = spec.bounds;
  return `<label class="slider" data-key="${spec.key}">
    <span class="slider-label">${b.label}</span>
    <input type="range" name="${spec.key}" min="${b.min}" max="${b.max}"
           step="${b.step}" value="${spec.value}"/>
    <span class="slider-value">${spec.value} ${b.unit}</span>
    <span class="slider-bounds">[${b.min} … ${b.max}]</span>
  </label>`;
}

export function renderBoundsRejection(message: string, bounds: ParameterBounds): string {
  return `<div class="bounds-rejection">
    ${message} <span class="bounds">(allowed: ${bounds.min} to ${bounds.max} ${bounds.unit})</span>
  </div>`;
}

export function renderWaterfall(report: PipelineReport): string {
  const v = report.valuation;
  const bars = waterfallBars(
    [
      ["Terminal value", v.tv_b],
      ["Interim cash flows", v.fcf_interim_b],
      ["Cost (NPV)", v.npv_cost_b],
    ],
    320,
  );
  const segments = bars
    .map(
      (bar) => `<div class="wf-bar ${bar.label.startsWith("Cost") ? "wf-cost" : "wf-gain"}"
        style="left:${bar.x.toFixed(1)}px;width:${bar.width.toFixed(1)}px"
        title="${bar.label}"></div>`,
    )
    .join("");
  return `<div class="waterfall" data-total="${v.delta_ev_b}">
    <div class="wf-track">${segments}</div>
    <div class="wf-legend">
      <span>Terminal value <b>$${v.tv_b.toFixed(3)}B</b></span>
      <span>Interim cash flows <b>$${v.fcf_interim_b.toFixed(3)}B</b></span>
      <span>Cost (NPV) <b>−$${v.npv_cost_b.toFixed(3)}B</b></span>
      <span class="wf-total">Value creation <b>$${v.delta_ev_b.toFixed(3)}B</b></span>
    </div>
  </div>`;
}

export function renderDensityGauge(report: PipelineReport): string {
  const v = report.valuation;
  const needle = gaugeNeedle(v.value_density, 6, 240);
  const tier2 = gaugeTick(1.0, 6, 240);
  const tier1 = gaugeTick(2.0, 6, 240);
  return `<div class="vd-gauge" data-vd="${v.value_density}" data-tier="${v.tier}">
    <div class="gauge-track">
      <div class="gauge-band band-t3" style="width:${tier2.toFixed(1)}px"></div>
      <div class="gauge-tick" style="left:${tier2.toFixed(1)}px" title="tier boundary 1.0x"></div>
      <div class="gauge-tick" style="left:${tier1.toFixed(1)}px" title="tier boundary 2.0x"></div>
      <div class="gauge-needle" style="left:${needle.toFixed(1)}px"></div>
    </div>
    <div class="gauge-reading">Value density <b>${v.value_density.toFixed(1)}x</b> → ${v.tier}</div>
  </div>`;
}

export function renderRiskBadge(report: PipelineReport): string {
  const d = report.disruption;
  return `<span class="adri-badge" style="background:${riskColor(d.classification)}"
    title="24-month displacement probability ${d.displacement_24mo.toFixed(3)}">
    Disruption ${d.adri.toFixed(1)} · ${d.classification}
  </span>`;
}

export function renderTrajectoryReadout(report: PipelineReport): string {
  const t = report.trajectory;
  return `<div class="trajectory-readout">
    <span>Implied position <b>${t.t_hat_months.toFixed(1)} mo</b></span>
    <span>Ramp midpoint <b data-field="t50">${t.t50_months.toFixed(1)} mo</b></span>
    <span>Delay factor <b>${t.delay_factor.toFixed(2)}x</b></span>
    <span>Wave zone <b>${t.wave_zone}</b></span>
  </div>`;
}

export function renderHeatmap(grid: WhatIfGridResponse): string {
  const shades = heatShades(grid.delta_ev_b, 9);
  const rows = grid.delta_ev_b
    .map((row, yi) => {
      const cells = row
        .map(
          (value, xi) => `<td class="heat heat-${shades[yi][xi]}"
            data-x="${grid.x_values[xi]}" data-y="${grid.y_values[yi]}"
            title="$${value.toFixed(3)}B">${value.toFixed(2)}</td>`,
        )
        .join("");
      return `<tr><th>${grid.y_values[yi].toFixed(2)}</th>${cells}</tr>`;
    })
    .join("");
  const header = grid.x_values.map((x) => `<th>${x.toFixed(2)}</th>`).join("");
  return `<table class="heatmap" data-x-key="${grid.x_key}" data-y-key="${grid.y_key}">
    <thead><tr><th>${grid.y_key} \\ ${grid.x_key}</th>${header}</tr></thead>
    <tbody>${rows}</tbody>
  </table>`;
}

export function renderWhatIfPanel(
  report: PipelineReport,
  sliders: SliderSpec[],
  grid: WhatIfGridResponse | null,
  rejection: string,
): string {
  return `<section id="whatif-panel">
    <h2>What-if: ${report.firm.name}</h2>
    <div class="scorecard-line">${report.scorecard.line}</div>
    ${renderTrajectoryReadout(report)}
    <div class="sliders">${sliders.map(renderSlider).join("")}</div>
    ${rejection}
    ${renderWaterfall(report)}
    ${renderDensityGauge(report)}
    ${renderRiskBadge(report)}
    ${grid ? renderHeatmap(grid) : `<div class="heatmap-pending">heatmap loading…</div>`}
  </section>`;
}
