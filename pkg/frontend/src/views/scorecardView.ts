/**
 * Scorecard rendering. View-layer contract: every number shown comes
 * verbatim from a service response; this module performs no arithmetic.
 */

import type { SurveyResponseBody } from "../api/types.js";
import { DIMENSION_LABELS, FEASIBILITY_LABELS } from "../state/survey.js";

export function renderDimensionTable(result: SurveyResponseBody): string {
  const rows = Object.entries(result.dimensions)
    .map(([key, score]) => {
      const tier = result.tiers[key];
      const flagged = tier === "D" ? ` <span class="tier-flag">unverified</span>` : "";
      return `<tr data-dim="${key}">
        <td>${DIMENSION_LABELS[key] ?? key}</td>
        <td class="score">${score.toFixed(1)}</td>
        <td class="tier tier-${tier}">${tier}${flagged}</td>
      </tr>`;
    })
    .join("");
  return `<table class="dimensions"><thead>
    <tr><th>Dimension</th><th>Score</th><th>Evidence tier</th></tr>
  </thead><tbody>${rows}</tbody></table>`;
}

export function renderFeasibilityList(result: SurveyResponseBody): string {
  const items = Object.entries(result.ifs)
    .map(([key, value]) => `<li>${FEASIBILITY_LABELS[key] ?? key}: <b>${value.toFixed(2)}</b></li>`)
    .join("");
  return `<ul class="feasibility">${items}</ul>`;
}

export function renderScorecardLine(line: string): string {
  return `<div class="scorecard-line">${line}</div>`;
}
