/** Dashboard behavior against the recorded-response stub service. */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiError, type ApiClient } from "../src/api.js";
import { WhatIfApp } from "../src/app.js";
import type { FeedbackReportDto, Overrides } from "../src/types.js";
import {
  feedbackBaseline,
  patterns,
  whatifNoop,
  whatifSteps12000,
  whatifSteps7000,
} from "./fixtures.js";

class StubService implements ApiClient {
  whatifCalls: Overrides[] = [];
  failFeedbackWith: ApiError | Error | null = null;

  async getHealth() {
    return {
      status: "ok", model_loaded: true, patterns_loaded: true,
      window_t: 1, users: ["u01"],
    };
  }

  async getPatterns() {
    return patterns;
  }

  async getFeedback(): Promise<FeedbackReportDto> {
    if (this.failFeedbackWith) throw this.failFeedbackWith;
    return feedbackBaseline;
  }

  async postWhatIf(
    _user: string,
    _date: string,
    overrides: Overrides,
  ): Promise<FeedbackReportDto> {
    this.whatifCalls.push(overrides);
    const steps = overrides["steps"];
    if (typeof steps === "number" && steps >= 10000) return whatifSteps12000;
    if (typeof steps === "number" && steps >= 6000) return whatifSteps7000;
    return whatifNoop;
  }
}

function suggestionParams(root: HTMLElement, card: string): string[] {
  const nodes = root.querySelectorAll(
    `.report[data-card="${card}"] .suggestion`,
  );
  // cards are distinguished by order: first "as logged", then "what-if"
  void nodes;
  const cards = root.querySelectorAll(".report");
  const index = card === "baseline" ? 0 : 1;
  const target = cards[index];
  if (!target) return [];
  return Array.from(target.querySelectorAll(".suggestion:not(.empty)")).map(
    (node) => (node as HTMLElement).dataset["parameter"] ?? "",
  );
}

function setSlider(root: HTMLElement, name: string, value: number): void {
  const input = root.querySelector(
    `input[name="${name}"]`,
  ) as HTMLInputElement | null;
  expect(input).not.toBeNull();
  input!.value = String(value);
  input!.dispatchEvent(new Event("input", { bubbles: true }));
}

describe("what-if dashboard", () => {
  let root: HTMLElement;
  let service: StubService;
  let app: WhatIfApp;

  beforeEach(() => {
    vi.useFakeTimers();
    root = document.createElement("div");
    document.body.append(root);
    service = new StubService();
    app = new WhatIfApp(root, service, "u01", "2024-03-10", { debounceMs: 300 });
  });

  afterEach(() => {
    vi.useRealTimers();
    root.remove();
  });

  it("baseline load renders score 75 with two suggestions", async () => {
    await app.loadBaseline();
    expect(root.querySelector(".score")?.textContent).toBe("75.0");
    expect(root.querySelector(".badge")?.textContent).toBe("low");
    const params = suggestionParams(root, "baseline");
    expect(params.sort()).toEqual(["distance", "numsteps"]);
    const messages = Array.from(root.querySelectorAll(".suggestion-message")).map(
      (n) => n.textContent,
    );
    expect(messages).toContain("Please try to walk more");
    expect(messages).toContain("Let's go out and have a walk");
  });

  it("raising the steps slider past the normal cut removes the numsteps suggestion", async () => {
    await app.loadBaseline();
    setSlider(root, "steps", 7000); // past the 6000 'normal' cut
    await vi.advanceTimersByTimeAsync(300);
    expect(service.whatifCalls).toEqual([{ steps: 7000 }]);
    const params = suggestionParams(root, "whatif");
    expect(params).toEqual(["distance"]);
    // hypothetical card shows the re-predicted score and its delta
    const scores = Array.from(root.querySelectorAll(".score")).map((n) => n.textContent);
    expect(scores).toEqual(["75.0", whatifSteps7000.predicted_sq.toFixed(1)]);
  });

  it("rapid slider drags send only the final value", async () => {
    await app.loadBaseline();
    setSlider(root, "steps", 6500);
    await vi.advanceTimersByTimeAsync(100);
    setSlider(root, "steps", 8000);
    await vi.advanceTimersByTimeAsync(100);
    setSlider(root, "steps", 12000);
    await vi.advanceTimersByTimeAsync(300);
    expect(service.whatifCalls).toEqual([{ steps: 12000 }]);
    expect(suggestionParams(root, "whatif")).toEqual(
      whatifSteps12000.items.map((i) => i.parameter),
    );
  });

  it("stale what-if responses are never rendered", async () => {
    await app.loadBaseline();
    const pending: Array<{
      overrides: Overrides;
      resolve: (r: FeedbackReportDto) => void;
    }> = [];
    service.postWhatIf = (_u, _d, overrides) =>
      new Promise((resolve) => pending.push({ overrides, resolve }));

    setSlider(root, "steps", 7000);
    await vi.advanceTimersByTimeAsync(300); // request 1 in flight
    setSlider(root, "steps", 12000);
    await vi.advanceTimersByTimeAsync(300); // request 2 in flight
    expect(pending.length).toBe(2);

    // resolve out of order: the late arrival of request 1 must be discarded
    pending[1]!.resolve(whatifSteps12000);
    await vi.advanceTimersByTimeAsync(0);
    pending[0]!.resolve(whatifSteps7000);
    await vi.advanceTimersByTimeAsync(0);

    expect(suggestionParams(root, "whatif")).toEqual(
      whatifSteps12000.items.map((i) => i.parameter),
    );
    const scores = Array.from(root.querySelectorAll(".score")).map((n) => n.textContent);
    expect(scores[1]).toBe(whatifSteps12000.predicted_sq.toFixed(1));
  });

  it("zero-delta what-if equals the baseline report", async () => {
    await app.loadBaseline();
    const pick = (value: string) => {
      // each render rebuilds the DOM, so re-query before dispatching
      const select = root.querySelector("select[name=chronotype]") as HTMLSelectElement;
      select.value = value;
      select.dispatchEvent(new Event("input", { bubbles: true }));
    };
    pick("A");
    pick("");
    await vi.advanceTimersByTimeAsync(300);
    expect(service.whatifCalls).toEqual([{}]);
    const scores = Array.from(root.querySelectorAll(".score")).map((n) => n.textContent);
    expect(scores).toEqual(["75.0", "75.0"]);
    expect(root.querySelector(".delta")?.textContent).toBe("+0.0");
  });

  it("404 shows the no-data message; failures show a retry banner", async () => {
    service.failFeedbackWith = new ApiError(404, "no stored window");
    await app.loadBaseline();
    expect(root.querySelector(".banner.error")?.textContent).toContain(
      "no data for this date",
    );

    service.failFeedbackWith = new Error("network down");
    await app.loadBaseline();
    expect(root.querySelector(".banner.error")?.textContent).toContain("try again");

    // retry button reloads once the service is back
    service.failFeedbackWith = null;
    (root.querySelector(".retry") as HTMLElement).click();
    await vi.advanceTimersByTimeAsync(0);
    expect(root.querySelector(".score")?.textContent).toBe("75.0");
  });

  it("rejected overrides surface as inline validation, not a crash", async () => {
    await app.loadBaseline();
    service.postWhatIf = async () => {
      throw new ApiError(400, "variable 'steps' is unknown or immutable");
    };
    setSlider(root, "steps", 7000);
    await vi.advanceTimersByTimeAsync(300);
    expect(root.querySelector(".banner.validation")?.textContent).toContain(
      "unknown or immutable",
    );
  });
});
