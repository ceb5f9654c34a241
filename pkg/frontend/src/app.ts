/** Controller wiring state, service client and view together. */

import { ApiError, type ApiClient } from "./api.js";
import { debounce, type Debounced } from "./debounce.js";
import { LatestGate } from "./latest.js";
import {
  chronotypesFromMeta,
  initialState,
  setOverride,
  slidersFromMeta,
  type WhatIfViewState,
} from "./state.js";
import { render } from "./view.js";

export interface AppOptions {
  debounceMs?: number;
}

export class WhatIfApp {
  readonly state: WhatIfViewState;
  private readonly gate = new LatestGate();
  private readonly sendDebounced: Debounced<[]>;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    userId: string,
    date: string,
    options: AppOptions = {},
  ) {
    this.state = initialState(userId, date);
    this.sendDebounced = debounce(() => void this.sendWhatIf(), options.debounceMs ?? 300);
    root.addEventListener("input", (event) => this.onInput(event));
    root.addEventListener("click", (event) => {
      if ((event.target as HTMLElement).classList?.contains("retry")) {
        void this.loadBaseline();
      }
    });
  }

  /** Fetch slider metadata and the factual report, then render. */
  async loadBaseline(): Promise<void> {
    this.state.error = null;
    this.state.inFlight = true;
    this.render();
    try {
      const [patterns, report] = await Promise.all([
        this.api.getPatterns(),
        this.api.getFeedback(this.state.userId, this.state.date),
      ]);
      this.state.sliders = slidersFromMeta(patterns.meta);
      this.state.chronotypes = chronotypesFromMeta(patterns.meta);
      this.state.baseline = report;
      this.state.hypothetical = null;
    } catch (error) {
      this.state.error =
        error instanceof ApiError && error.status === 404
          ? "no data for this date"
          : "service unreachable — try again";
    } finally {
      this.state.inFlight = false;
      this.render();
    }
  }

  private onInput(event: Event): void {
    const target = event.target as HTMLInputElement | HTMLSelectElement;
    if (!target.name) return;
    if (target instanceof HTMLSelectElement) {
      if (target.value === "") {
        delete this.state.overrides[target.name];
      } else {
        setOverride(this.state, target.name, target.value);
      }
    } else if (target.type === "range") {
      setOverride(this.state, target.name, Number(target.value));
    } else {
      return;
    }
    this.state.inFlight = true;
    this.render();
    this.sendDebounced();
  }

  /** Issue the what-if call; only the latest response may render. */
  private async sendWhatIf(): Promise<void> {
    const seq = this.gate.issue();
    try {
      const report = await this.api.postWhatIf(
        this.state.userId,
        this.state.date,
        { ...this.state.overrides },
      );
      if (!this.gate.isCurrent(seq)) return; // stale response, discard
      this.state.hypothetical = report;
      this.state.validation = null;
    } catch (error) {
      if (!this.gate.isCurrent(seq)) return;
      if (error instanceof ApiError && error.status === 400) {
        this.state.validation = error.message;
      } else {
        this.state.error = "service unreachable — try again";
      }
    } finally {
      if (this.gate.isCurrent(seq)) {
        this.state.inFlight = false;
        this.render();
      }
    }
  }

  render(): void {
    render(this.state, this.root);
  }
}
