/** Loads the recorded service responses (written by
 * scripts/record_frontend_fixtures.py in the repository root). */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FeedbackReportDto, PatternsResponse } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

function load<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export const feedbackBaseline = load<FeedbackReportDto>("feedback_baseline.json");
export const whatifSteps7000 = load<FeedbackReportDto>("whatif_steps_7000.json");
export const whatifSteps12000 = load<FeedbackReportDto>("whatif_steps_12000.json");
export const whatifNoop = load<FeedbackReportDto>("whatif_noop.json");
export const patterns = load<PatternsResponse>("patterns.json");

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
