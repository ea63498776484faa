/** Wire types mirroring the engine service's JSON bodies. */

export interface ParameterBounds {
  min: number;
  max: number;
  step: number;
  unit: string;
  label: string;
}

export interface RegisterResponse {
  parameters: Record<string, ParameterBounds>;
  engine_version: string;
}

export interface IndustrySummary {
  id: string;
  name: string;
  naics: string;
  psi: number;
  theta: number;
  iass_base: number;
}

export interface SurveyAnswerBody {
  question: number;
  answer: number;
  evidence: boolean;
  citation?: string;
  sub_answers?: Record<string, number> | null;
}

export interface SurveyResponseBody {
  dimensions: Record<string, number>;
  tiers: Record<string, string>;
  ifs: Record<string, number>;
  capped_questions: number[];
  question_scores: Record<string, number>;
}

export interface ScorecardBlock {
  aitg_raw: number;
  ir: number;
  g_eff: number;
  line: string;
  frontier_exceeded: boolean;
  dimensions: Record<string, number>;
  tiers: Record<string, string>;
  uq: { total: number };
}

export interface TrajectoryBlock {
  t_hat_months: number;
  t50_months: number;
  delay_factor: number;
  wave_zone: string;
}

export interface ValuationBlock {
  phi: number;
  exit_multiple: number;
  delta_r: number;
  ifs_residual: number;
  tv_b: number;
  fcf_interim_b: number;
  npv_cost_b: number;
  impl_cost_b: number;
  cost_basis: string;
  delta_ev_b: number;
  value_density: number;
  tier: string;
}

export interface DisruptionBlock {
  moat: number;
  adri: number;
  classification: string;
  displacement_24mo: number;
}

export interface PipelineReport {
  firm: { id: string; name: string; industry: string };
  scorecard: ScorecardBlock;
  trajectory: TrajectoryBlock;
  valuation: ValuationBlock;
  disruption: DisruptionBlock;
}

export interface WhatIfGridResponse {
  x_key: string;
  y_key: string;
  x_values: number[];
  y_values: number[];
  delta_ev_b: number[][];
}

export interface ServiceError {
  error: { message: string; field_path: string };
}
