/**
 * Session state: selected firm, what-if overrides, the last report, and
 * override validation against the engine's parameter register (fetched
 * at startup; the single source of truth for every slider bound).
 */

import type { ParameterBounds, PipelineReport, RegisterResponse } from "../api/types.js";

export interface OverrideRejection {
  key: string;
  message: string;
  bounds: ParameterBounds;
}

export class Session {
  firmId = "";
  overrides: Record<string, number> = {};
  lastReport: PipelineReport | null = null;
  private register: Record<string, ParameterBounds> = {};

  adoptRegister(register: RegisterResponse): void {
    this.register = register.parameters;
  }

  bounds(key: string): ParameterBounds | undefined {
    return this.register[key];
  }

  registeredKeys(): string[] {
    return Object.keys(this.register);
  }

  /**
   * Validate and stage one override. Out-of-range values are rejected
   * client-side with the register bounds attached so the view can show
   * them inline; unknown keys are rejected outright.
   */
  setOverride(key: string, value: number): OverrideRejection | null {
    const bounds = this.register[key];
    if (!bounds) {
      return {
        key,
        message: `"${key}" is not a registered override`,
        bounds: { min: Number.NaN, max: Number.NaN, step: Number.NaN, unit: "", label: key },
      };
    }
    if (Number.isNaN(value) || value < bounds.min || value > bounds.max) {
      return {
        key,
        message: `${bounds.label} must lie in [${bounds.min}, ${bounds.max}] ${bounds.unit}`,
        bounds,
      };
    }
    this.overrides[key] = value;
    return null;
  }

  clearOverride(key: string): void {
    delete this.overrides[key];
  }
}
