import { describe, expect, it, vi } from "vitest";

import { ApiError, PersqApi } from "../src/api.js";
import { debounce } from "../src/debounce.js";
import { LatestGate } from "../src/latest.js";
import {
  clampToBounds,
  initialState,
  scoreDelta,
  setOverride,
  slidersFromMeta,
} from "../src/state.js";
import {
  feedbackBaseline,
  jsonResponse,
  patterns,
  whatifSteps7000,
} from "./fixtures.js";

describe("debounce", () => {
  it("collapses rapid calls into the trailing one", () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const fn = debounce((value: number) => calls.push(value), 300);
    fn(1);
    vi.advanceTimersByTime(100);
    fn(2);
    vi.advanceTimersByTime(100);
    fn(3);
    vi.advanceTimersByTime(299);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(calls).toEqual([3]);
    vi.useRealTimers();
  });

  it("cancel drops the pending call", () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const fn = debounce((value: number) => calls.push(value), 300);
    fn(1);
    fn.cancel();
    vi.advanceTimersByTime(1000);
    expect(calls).toEqual([]);
    vi.useRealTimers();
  });
});

describe("LatestGate", () => {
  it("only the most recently issued sequence is current", () => {
    const gate = new LatestGate();
    const first = gate.issue();
    const second = gate.issue();
    expect(gate.isCurrent(first)).toBe(false);
    expect(gate.isCurrent(second)).toBe(true);
    const third = gate.issue();
    expect(gate.isCurrent(second)).toBe(false);
    expect(gate.isCurrent(third)).toBe(true);
  });
});

describe("state", () => {
  it("builds sliders from /patterns metadata with bounds and cuts", () => {
    const sliders = slidersFromMeta(patterns.meta);
    const steps = sliders.find((s) => s.name === "steps");
    expect(steps).toBeDefined();
    expect(steps!.min).toBe(0);
    expect(steps!.max).toBe(20000);
    expect(steps!.cuts).toEqual([6000, 10000]);
  });

  it("clamps override values into the declared bounds", () => {
    const state = initialState("u01", "2024-03-10");
    state.sliders = slidersFromMeta(patterns.meta);
    setOverride(state, "steps", 999999);
    expect(state.overrides["steps"]).toBe(20000);
    setOverride(state, "steps", -5);
    expect(state.overrides["steps"]).toBe(0);
    const spec = state.sliders.find((s) => s.name === "steps")!;
    expect(clampToBounds(spec, 7000)).toBe(7000);
  });

  it("score delta is hypothetical minus baseline", () => {
    const state = initialState("u01", "2024-03-10");
    expect(scoreDelta(state)).toBeNull();
    state.baseline = feedbackBaseline;
    state.hypothetical = whatifSteps7000;
    expect(scoreDelta(state)).toBeCloseTo(
      whatifSteps7000.predicted_sq - feedbackBaseline.predicted_sq,
      12,
    );
  });
});

describe("PersqApi", () => {
  it("returns parsed bodies and encodes the routes", async () => {
    const seen: string[] = [];
    const api = new PersqApi("http://svc", async (url, init) => {
      seen.push(`${init?.method ?? "GET"} ${url}`);
      if (url.includes("/feedback/")) return jsonResponse(feedbackBaseline);
      if (url.endsWith("/patterns")) return jsonResponse(patterns);
      return jsonResponse(whatifSteps7000);
    });
    const report = await api.getFeedback("u01", "2024-03-10");
    expect(report.predicted_sq).toBe(75.0);
    await api.getPatterns();
    const whatif = await api.postWhatIf("u01", "2024-03-10", { steps: 7000 });
    expect(whatif.items.map((i) => i.parameter)).toEqual(["distance"]);
    expect(seen).toEqual([
      "GET http://svc/feedback/u01?date=2024-03-10",
      "GET http://svc/patterns",
      "POST http://svc/whatif",
    ]);
  });

  it("raises ApiError with the service detail on non-2xx", async () => {
    const api = new PersqApi("http://svc", async () =>
      jsonResponse({ detail: "unknown user 'ghost'" }, 404),
    );
    await expect(api.getFeedback("ghost", "2024-03-10")).rejects.toMatchObject({
      name: "ApiError",
      status: 404,
      message: "unknown user 'ghost'",
    });
  });

  it("sends overrides verbatim in the what-if body", async () => {
    let body: unknown;
    const api = new PersqApi("http://svc", async (_url, init) => {
      body = JSON.parse(String(init?.body));
      return jsonResponse(whatifSteps7000);
    });
    await api.postWhatIf("u01", "2024-03-10", { steps: 7000, chronotype: "A" });
    expect(body).toEqual({
      user_id: "u01",
      base_date: "2024-03-10",
      overrides: { steps: 7000, chronotype: "A" },
    });
  });
});
