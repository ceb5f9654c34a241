/** View state and its pure update helpers. Slider bounds come from the
 * /patterns metadata; values are clamped into them before being sent. */

import type {
  FeedbackReportDto,
  Overrides,
  VariableMeta,
} from "./types.js";

export interface SliderSpec {
  name: string;
  min: number;
  max: number;
  step: number;
  cuts: number[];
}

export interface WhatIfViewState {
  userId: string;
  date: string;
  sliders: SliderSpec[];
  chronotypes: string[];
  overrides: Overrides; // only variables the user actually touched
  baseline: FeedbackReportDto | null;
  hypothetical: FeedbackReportDto | null;
  inFlight: boolean;
  error: string | null; // retryable banner (service unreachable, 404 ...)
  validation: string | null; // inline message for rejected overrides (400)
}

export function initialState(userId: string, date: string): WhatIfViewState {
  return {
    userId,
    date,
    sliders: [],
    chronotypes: [],
    overrides: {},
    baseline: null,
    hypothetical: null,
    inFlight: false,
    error: null,
    validation: null,
  };
}

export function slidersFromMeta(meta: Record<string, VariableMeta>): SliderSpec[] {
  const sliders: SliderSpec[] = [];
  for (const [name, entry] of Object.entries(meta)) {
    if (!entry.mutable || entry.min === undefined || entry.max === undefined) continue;
    const span = entry.max - entry.min;
    sliders.push({
      name,
      min: entry.min,
      max: entry.max,
      step: span > 100 ? Math.round(span / 200) : span > 10 ? 1 : 0.5,
      cuts: entry.cuts ?? [],
    });
  }
  sliders.sort((a, b) => a.name.localeCompare(b.name));
  return sliders;
}

export function chronotypesFromMeta(meta: Record<string, VariableMeta>): string[] {
  return meta["chronotype"]?.categories ?? [];
}

export function clampToBounds(spec: SliderSpec, value: number): number {
  return Math.min(spec.max, Math.max(spec.min, value));
}

export function setOverride(
  state: WhatIfViewState,
  name: string,
  value: number | string,
): void {
  const spec = state.sliders.find((s) => s.name === name);
  state.overrides[name] =
    spec !== undefined && typeof value === "number"
      ? clampToBounds(spec, value)
      : value;
  state.validation = null;
}

/** Signed difference shown next to the hypothetical score. */
export function scoreDelta(state: WhatIfViewState): number | null {
  if (state.baseline === null || state.hypothetical === null) return null;
  return state.hypothetical.predicted_sq - state.baseline.predicted_sq;
}
