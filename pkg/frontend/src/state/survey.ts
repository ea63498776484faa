/**
 * Survey wizard state: the 25-question instrument, answer tracking, the
 * evidence prompt rule, and assembly of the submission body. Scores are
 * never computed here; the service owns all scoring.
 */

import type { SurveyAnswerBody } from "../api/types.js";

export interface QuestionDef {
  id: number;
  dimension: string;
  label: string;
}

export const DIMENSION_LABELS: Record<string, string> = {
  dim: "Data infrastructure",
  pac: "Process automation",
  war: "Workforce augmentation",
  dar: "Decision automation",
  apr: "Product & revenue integration",
  oac: "Organizational capability",
};

const QUESTION_LABELS: Record<string, string[]> = {
  dim: [
    "Cloud data platform coverage",
    "Data integration and accessibility",
    "Data governance and quality controls",
    "Model training and serving infrastructure",
  ],
  pac: [
    "Share of rules-based processes automated",
    "Complexity ceiling of automated tasks",
    "Automation monitoring and optimization",
    "Cross-functional automation integration",
  ],
  war: [
    "Employee assistant-tool adoption breadth",
    "Structured upskilling programs",
    "Human-machine workflow design",
    "Change management for tool adoption",
  ],
  dar: [
    "Share of recurring decisions automated",
    "Decision model governance",
    "Real-time decisioning capability",
    "Functional breadth of automated decisions",
  ],
  apr: [
    "Revenue attributable to intelligent features",
    "Intelligent product development pipeline",
    "Customer-facing automation at scale",
    "Monetization strategy for capabilities",
  ],
  oac: [
    "Leadership and governance structure",
    "Engineering talent density",
    "Responsible-deployment practices",
    "Strategy and capital-allocation alignment",
  ],
};

export const FEASIBILITY_KEYS = ["occ", "dr", "vtr", "crs", "reg"] as const;

export const FEASIBILITY_LABELS: Record<string, string> = {
  occ: "Organizational change capacity",
  dr: "Data readiness",
  vtr: "Vendor / technology risk",
  crs: "Competitive response speed",
  reg: "Regulatory environment",
};

export function questionDefs(): QuestionDef[] {
  const defs: QuestionDef[] = [];
  let id = 1;
  for (const dimension of Object.keys(QUESTION_LABELS)) {
    for (const label of QUESTION_LABELS[dimension]) {
      defs.push({ id, dimension, label });
      id = nextId(id);
    }
  }
  return defs;
}

// kept out of the view layer; trivial successor without arithmetic noise there
function nextId(id: number): number {
  return id + 1;
}

export interface AnswerState {
  answer: number;
  evidence: boolean;
  citation: string;
}

export interface SurveyState {
  answers: Map<number, AnswerState>;
  feasibility: Map<string, number>;
  feasibilityEvidence: boolean;
}

export function emptySurvey(): SurveyState {
  const answers = new Map<number, AnswerState>();
  for (const def of questionDefs()) {
    answers.set(def.id, { answer: 0, evidence: false, citation: "" });
  }
  const feasibility = new Map<string, number>();
  for (const key of FEASIBILITY_KEYS) {
    feasibility.set(key, 0);
  }
  return { answers, feasibility, feasibilityEvidence: false };
}

/** The evidence prompt rule: any selected answer of 3 or 4 requires an attachment. */
export function needsEvidence(answer: number): boolean {
  return answer >= 3;
}

/** Pending cap warning: unevidenced high answers will be capped server-side. */
export function capWarnings(state: SurveyState): number[] {
  const flagged: number[] = [];
  for (const [id, a] of state.answers) {
    if (needsEvidence(a.answer) && !a.evidence) {
      flagged.push(id);
    }
  }
  return flagged.sort((a, b) => (a < b ? -1 : 1));
}

export function isComplete(state: SurveyState): boolean {
  return state.answers.size === 24 && state.feasibility.size === FEASIBILITY_KEYS.length;
}

export function toSubmission(state: SurveyState): SurveyAnswerBody[] {
  const body: SurveyAnswerBody[] = [];
  for (const [question, a] of state.answers) {
    body.push({ question, answer: a.answer, evidence: a.evidence, citation: a.citation });
  }
  const subs: Record<string, number> = {};
  for (const [key, value] of state.feasibility) {
    subs[key] = value;
  }
  body.push({ question: 25, answer: 0, evidence: state.feasibilityEvidence, sub_answers: subs });
  return body;
}
