// Final results screen. Everything shown here comes from the server's
// summary: score, elapsed time, move/turn count, reveal flag, stored story.

import { ResultsSummary } from "../api.js";
import { el, formatMs } from "../dom.js";
import { Translate } from "../i18n.js";

export function createResultsView(
  t: Translate,
  summary: ResultsSummary,
  onBack: () => void,
): HTMLElement {
  const rows: HTMLElement[] = [];
  if (summary.total > 0) {
    rows.push(
      row(
        t("results.score"),
        `${summary.correct_count} / ${summary.total} (${summary.percentage}%)`,
        "score",
      ),
    );
  }
  rows.push(row(t("results.time"), formatMs(summary.elapsed_ms), "time"));
  if (summary.moves_or_turns !== null) {
    rows.push(row(t("results.moves"), String(summary.moves_or_turns), "moves"));
  }
  if (summary.revealed) {
    rows.push(el("p", { class: "revealed-note", "data-role": "revealed" }, t("results.revealed")));
  }
  if (summary.story_text !== null) {
    rows.push(
      el("p", {}, t("results.story_saved")),
      el("blockquote", { class: "story", "data-role": "story" }, summary.story_text),
    );
  }
  const verdictStrip =
    summary.per_item.length > 0 && summary.total > 0
      ? el(
          "div",
          { class: "verdicts" },
          ...summary.per_item.map((verdict, index) =>
            el("span", { class: `verdict ${verdict}`, "data-item": String(index) }, verdict === "correct" ? "✓" : verdict === "incorrect" ? "✗" : "—"),
          ),
        )
      : null;

  return el(
    "section",
    { class: "results", "data-role": "results" },
    el("h2", {}, t("results.title")),
    ...rows,
    verdictStrip,
    el("button", { class: "primary", onclick: onBack }, t("practice.title")),
  );
}

function row(label: string, value: string, role: string): HTMLElement {
  return el(
    "p",
    { class: "result-row" },
    el("span", { class: "label" }, `${label}: `),
    el("strong", { "data-role": role }, value),
  );
}
