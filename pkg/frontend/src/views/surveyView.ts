/**
 * Survey wizard rendering: 25 questions on the 0-4 scale, an evidence
 * attachment prompt for any high answer, pre-submission cap warnings,
 * inline service errors at the offending question, and the scored
 * profile exactly as the service returned it.
 */

import type { SurveyResponseBody } from "../api/types.js";
import {
  FEASIBILITY_KEYS,
  FEASIBILITY_LABELS,
  needsEvidence,
  questionDefs,
  type SurveyState,
} from "../state/survey.js";
import { renderDimensionTable, renderFeasibilityList } from "./scorecardView.js";

export interface SurveyViewModel {
  state: SurveyState;
  warnings: number[];
  result: SurveyResponseBody | null;
  inlineError: { fieldPath: string; message: string } | null;
  retryable: boolean;
}

const ANSWER_CHOICES = ["0", "1", "2", "3", "4"];

function renderQuestion(
  id: number,
  label: string,
  answer: number,
  evidence: boolean,
  vm: SurveyViewModel,
): string {
  const choices = ANSWER_CHOICES.map(
    (c) => `<label><input type="radio" name="q${id}" value="${c}"
      ${String(answer) === c ? "checked" : ""}/> ${c}</label>`,
  ).join(" ");
  const evidencePrompt = needsEvidence(answer)
    ? `<div class="evidence-prompt" data-question="${id}">
         High answers need corroborating evidence.
         <label><input type="checkbox" class="evidence" data-question="${id}"
           ${evidence ? "checked" : ""}/> evidence attached</label>
       </div>`
    : "";
  const capWarning =
    vm.warnings.includes(id)
      ? `<div class="cap-warning" data-question="${id}">
           Without evidence this answer will be capped at 2 (anchor score 5)
           and the dimension flagged tier D on submission.
         </div>`
      : "";
  const inline =
    vm.inlineError && vm.inlineError.fieldPath.includes(`${id}`)
      ? `<div class="inline-error">${vm.inlineError.message}</div>`
      : "";
  return `<fieldset class="question" data-question="${id}">
    <legend>Q${id}. ${label}</legend>
    <div class="choices">${choices}</div>
    ${evidencePrompt}${capWarning}${inline}
  </fieldset>`;
}

export function renderSurveyWizard(vm: SurveyViewModel): string {
  const questions = questionDefs()
    .map((def) => {
      const a = vm.state.answers.get(def.id);
      return renderQuestion(def.id, def.label, a?.answer ?? 0, a?.evidence ?? false, vm);
    })
    .join("");
  const feasibility = FEASIBILITY_KEYS.map((key) => {
    const value = vm.state.feasibility.get(key) ?? 0;
    const choices = ANSWER_CHOICES.map(
      (c) => `<label><input type="radio" name="ifs-${key}" value="${c}"
        ${String(value) === c ? "checked" : ""}/> ${c}</label>`,
    ).join(" ");
    return `<fieldset class="question feasibility" data-factor="${key}">
      <legend>Q25${key}. ${FEASIBILITY_LABELS[key]}</legend>
      <div class="choices">${choices}</div>
    </fieldset>`;
  }).join("");
  const retry = vm.retryable
    ? `<div class="retry"><span>Service unreachable; nothing was scored.</span>
         <button id="retry-survey">Retry submission</button></div>`
    : "";
  const globalError =
    vm.inlineError && vm.inlineError.fieldPath === ""
      ? `<div class="inline-error">${vm.inlineError.message}</div>`
      : "";
  return `<section id="survey-wizard">
    <h2>Deployment survey</h2>
    ${questions}
    <h3>Implementation feasibility</h3>
    ${feasibility}
    ${retry}${globalError}
    <button id="submit-survey">Score via service</button>
    ${vm.result ? renderSurveyResult(vm.result) : ""}
  </section>`;
}

export function renderSurveyResult(result: SurveyResponseBody): string {
  const capped = result.capped_questions.length
    ? `<div class="capped-note">Capped without evidence: ${result.capped_questions
        .map((q) => `Q${q}`)
        .join(", ")}</div>`
    : "";
  const perQuestion = Object.entries(result.question_scores)
    .map(([q, score]) => `<span class="qscore" data-question="${q}">Q${q}=${score}</span>`)
    .join(" ");
  return `<section id="survey-result">
    <h3>Scored profile (service response)</h3>
    ${renderDimensionTable(result)}
    ${renderFeasibilityList(result)}
    ${capped}
    <div class="question-scores">${perQuestion}</div>
  </section>`;
}
