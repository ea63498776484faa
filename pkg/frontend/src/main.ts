/**
 * Application shell: fetches the parameter register at startup, wires
 * the survey wizard and what-if panel, and keeps at most one in-flight
 * evaluation per panel (latest slider position wins).
 */

import { EngineClient, ServiceRequestError } from "./api/client.js";
import { Session } from "./state/session.js";
import { capWarnings, emptySurvey, toSubmission, type SurveyState } from "./state/survey.js";
import { renderSurveyWizard, type SurveyViewModel } from "./views/surveyView.js";
import { renderBoundsRejection, renderWhatIfPanel, type SliderSpec } from "./views/whatifView.js";
import type { SurveyResponseBody, WhatIfGridResponse } from "./api/types.js";

const SLIDER_KEYS = ["ifs_occ", "ifs_dr", "exit_multiple", "ces_rho", "capture_lambda", "c_t"];

export class App {
  readonly client: EngineClient;
  readonly session = new Session();
  surveyState: SurveyState = emptySurvey();
  surveyResult: SurveyResponseBody | null = null;
  surveyError: { fieldPath: string; message: string } | null = null;
  surveyRetryable = false;
  grid: WhatIfGridResponse | null = null;
  rejectionHtml = "";
  private inFlight: AbortController | null = null;
  private requestSerial = 0;

  constructor(client: EngineClient) {
    this.client = client;
  }

  async start(firmId: string): Promise<void> {
    this.session.adoptRegister(await this.client.register());
    this.session.firmId = firmId;
    await this.refreshReport();
    await this.refreshGrid();
  }

  async submitSurvey(): Promise<void> {
    this.surveyError = null;
    this.surveyRetryable = false;
    try {
      this.surveyResult = await this.client.submitSurvey(toSubmission(this.surveyState));
    } catch (err) {
      if (err instanceof ServiceRequestError) {
        this.surveyRetryable = err.retryable;
        this.surveyError = { fieldPath: err.fieldPath, message: err.message };
        this.surveyResult = null;
      } else {
        throw err;
      }
    }
  }

  /** Stage a slider move; rejected values never reach the service. */
  async moveSlider(key: string, value: number): Promise<void> {
    const rejection = this.session.setOverride(key, value);
    if (rejection) {
      this.rejectionHtml = renderBoundsRejection(rejection.message, rejection.bounds);
      return;
    }
    this.rejectionHtml = "";
    await this.refreshReport();
  }

  async refreshReport(): Promise<void> {
    // cancel the previous evaluation on scrub; one in-flight request max
    this.inFlight?.abort();
    this.inFlight = new AbortController();
    const serial = this.nextSerial();
    const { report } = await this.client.evaluate(this.session.firmId, this.session.overrides);
    if (serial === this.requestSerial) {
      this.session.lastReport = report;
    }
  }

  async refreshGrid(): Promise<void> {
    this.grid = await this.client.whatIfGrid(this.session.firmId, "ifs_dr", "ifs_occ", {});
  }

  private nextSerial(): number {
    this.requestSerial = this.requestSerial + 1;
    return this.requestSerial;
  }

  surveyHtml(): string {
    const vm: SurveyViewModel = {
      state: this.surveyState,
      warnings: capWarnings(this.surveyState),
      result: this.surveyResult,
      inlineError: this.surveyError,
      retryable: this.surveyRetryable,
    };
    return renderSurveyWizard(vm);
  }

  whatifHtml(): string {
    const report = this.session.lastReport;
    if (!report) return `<section id="whatif-panel">no report yet</section>`;
    const sliders: SliderSpec[] = SLIDER_KEYS.flatMap((key) => {
      const bounds = this.session.bounds(key);
      if (!bounds) return [];
      const staged = this.session.overrides[key];
      return [{ key, bounds, value: staged ?? bounds.min }];
    });
    return renderWhatIfPanel(report, sliders, this.grid, this.rejectionHtml);
  }
}

export function mount(root: HTMLElement, app: App): void {
  const draw = () => {
    root.innerHTML = `${app.surveyHtml()}${app.whatifHtml()}`;
  };
  root.addEventListener("change", (event) => {
    const target = event.target as HTMLInputElement;
    if (target.matches(".sliders input[type=range]")) {
      void app.moveSlider(target.name, Number(target.value)).then(draw);
    }
  });
  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.id === "submit-survey" || target.id === "retry-survey") {
      void app.submitSurvey().then(draw);
    }
  });
  draw();
}

declare global {
  interface Window {
    aitgApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const app = new App(new EngineClient(""));
  window.aitgApp = app;
  void app.start("zions-bancorp").then(() => mount(document.getElementById("app")!, app));
}
