/**
 * Thin typed client over the engine service. The UI never computes a
 * domain number itself; everything rendered comes back through here.
 */

import type {
  IndustrySummary,
  PipelineReport,
  RegisterResponse,
  ServiceError,
  SurveyAnswerBody,
  SurveyResponseBody,
  WhatIfGridResponse,
} from "./types.js";

export class ServiceRequestError extends Error {
  readonly fieldPath: string;
  readonly retryable: boolean;

  constructor(message: string, fieldPath = "", retryable = false) {
    super(message);
    this.fieldPath = fieldPath;
    this.retryable = retryable;
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(`${base}${path}`, {
      headers: { "content-type": "application/json" },
      ...init,
    });
  } catch (err) {
    // network failure: surface a retry affordance, never compute locally
    throw new ServiceRequestError(`service unreachable: ${String(err)}`, "", true);
  }
  const body = (await response.json()) as T | ServiceError;
  if (!response.ok) {
    const e = body as ServiceError;
    throw new ServiceRequestError(
      e.error?.message ?? `request failed (${response.status})`,
      e.error?.field_path ?? "",
      false,
    );
  }
  return body as T;
}

export class EngineClient {
  constructor(readonly baseUrl: string = "") {}

  register(): Promise<RegisterResponse> {
    return request(this.baseUrl, "/register");
  }

  industries(): Promise<{ industries: IndustrySummary[] }> {
    return request(this.baseUrl, "/industries");
  }

  firms(): Promise<{ firms: { id: string; name: string; industry: string }[] }> {
    return request(this.baseUrl, "/firms");
  }

  submitSurvey(answers: SurveyAnswerBody[]): Promise<SurveyResponseBody> {
    return request(this.baseUrl, "/survey", {
      method: "POST",
      body: JSON.stringify({ answers }),
    });
  }

  evaluate(firmId: string, overrides: Record<string, unknown> = {}): Promise<{ report: PipelineReport }> {
    return request(this.baseUrl, "/whatif", {
      method: "POST",
      body: JSON.stringify({ firm_id: firmId, overrides }),
    });
  }

  whatIfGrid(
    firmId: string,
    xKey: string,
    yKey: string,
    overrides: Record<string, unknown> = {},
  ): Promise<WhatIfGridResponse> {
    // axis values are omitted: the service supplies its own 9x9 grid over
    // the registered parameter ranges, so no steps are computed client-side
    return request(this.baseUrl, "/whatif/grid", {
      method: "POST",
      body: JSON.stringify({ firm_id: firmId, x_key: xKey, y_key: yKey, overrides }),
    });
  }
}
