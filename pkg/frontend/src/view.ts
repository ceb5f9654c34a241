/** DOM rendering. Everything shown is copied verbatim from service
 * responses held in the state; no score or suggestion is derived locally. */

import type { FeedbackReportDto } from "./types.js";
import { scoreDelta, type WhatIfViewState } from "./state.js";

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderReportCard(
  title: string,
  report: FeedbackReportDto,
  delta: number | null,
): HTMLElement {
  const card = el("section", "card report");
  card.append(el("h2", "card-title", title));

  const scoreRow = el("div", "score-row");
  const score = el("span", "score", report.predicted_sq.toFixed(1));
  scoreRow.append(score);
  if (delta !== null) {
    const sign = delta >= 0 ? "+" : "";
    const trend = delta > 0 ? "up" : delta < 0 ? "down" : "flat";
    scoreRow.append(el("span", `delta delta-${trend}`, `${sign}${delta.toFixed(1)}`));
  }
  scoreRow.append(el("span", `badge badge-${report.sq_group}`, report.sq_group));
  card.append(scoreRow);

  if (report.matched_pattern !== null) {
    card.append(
      el(
        "p",
        "matched-pattern",
        `matched ${report.matched_pattern.group} pattern ` +
          `(support ${report.matched_pattern.support_count}): ` +
          report.matched_pattern.items.join(", "),
      ),
    );
  }

  const list = el("ul", "suggestions");
  for (const item of report.items) {
    const entry = el("li", "suggestion");
    entry.dataset["parameter"] = item.parameter;
    entry.append(
      el("span", "suggestion-param", `${item.parameter} ${item.current_level} → ${item.target_level}`),
      el("span", "suggestion-message", item.message),
    );
    list.append(entry);
  }
  if (report.items.length === 0) {
    list.append(el("li", "suggestion empty", "nothing to improve — keep it up"));
  }
  card.append(list);
  return card;
}

function renderControls(state: WhatIfViewState): HTMLElement {
  const panel = el("section", "card controls");
  panel.append(el("h2", "card-title", "what if today looked different?"));
  for (const spec of state.sliders) {
    const row = el("label", "control-row");
    row.append(el("span", "control-name", spec.name));
    const input = document.createElement("input");
    input.type = "range";
    input.name = spec.name;
    input.min = String(spec.min);
    input.max = String(spec.max);
    input.step = String(spec.step);
    const touched = state.overrides[spec.name];
    input.value = String(touched ?? (spec.min + spec.max) / 2);
    row.append(input);
    row.append(
      el(
        "span",
        "control-value",
        touched !== undefined ? String(touched) : "(unchanged)",
      ),
    );
    panel.append(row);
  }
  if (state.chronotypes.length > 0) {
    const row = el("label", "control-row");
    row.append(el("span", "control-name", "chronotype"));
    const select = document.createElement("select");
    select.name = "chronotype";
    const keep = document.createElement("option");
    keep.value = "";
    keep.textContent = "(unchanged)";
    select.append(keep);
    for (const category of state.chronotypes) {
      const option = document.createElement("option");
      option.value = category;
      option.textContent = category;
      select.append(option);
    }
    const touched = state.overrides["chronotype"];
    if (typeof touched === "string") select.value = touched;
    row.append(select);
    panel.append(row);
  }
  return panel;
}

export function render(state: WhatIfViewState, root: HTMLElement): void {
  root.textContent = "";
  const header = el("header", "header");
  header.append(el("h1", "title", `tonight's sleep quality — ${state.userId}`));
  header.append(el("span", "date", state.date));
  if (state.inFlight) header.append(el("span", "spinner", "updating…"));
  root.append(header);

  if (state.error !== null) {
    const banner = el("div", "banner error", state.error);
    const retry = document.createElement("button");
    retry.className = "retry";
    retry.textContent = "retry";
    banner.append(retry);
    root.append(banner);
  }
  if (state.validation !== null) {
    root.append(el("div", "banner validation", state.validation));
  }

  const cards = el("main", "cards");
  if (state.baseline !== null) {
    cards.append(renderReportCard("as logged", state.baseline, null));
  }
  if (state.hypothetical !== null) {
    cards.append(renderReportCard("what-if", state.hypothetical, scoreDelta(state)));
  }
  root.append(cards);
  if (state.baseline !== null) {
    root.append(renderControls(state));
  }
}
