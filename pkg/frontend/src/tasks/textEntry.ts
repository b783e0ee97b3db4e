// Type-the-letter task: a glyph per item, a text box, a per-item Check with
// immediate feedback, one final grade on Finish. Per-item verdicts come from
// the server via shadow sessions; the UI never compares letters itself.

import { el } from "../dom.js";
import {
  TaskContext,
  finishButton,
  glyphImg,
  liveTimer,
  markVerdict,
  shadowCheck,
  taskErrorHandler,
  toolbar,
} from "./common.js";

export function createTextEntryTask(ctx: TaskContext): HTMLElement {
  const view = ctx.session.exercise;
  const items = view.items ?? [];
  const itemCount = Math.max(...items.map((i) => i.id), -1) + 1;
  const answers = new Map<number, string>();

  const host = el("section", { class: "task task-text-entry" });
  const onError = taskErrorHandler(ctx, host);
  const board = el("div", { class: "board" });

  for (const item of items) {
    const cell = el("figure", { class: "cell", "data-item": String(item.id) });
    const input = el("input", {
      type: "text",
      maxlength: "3",
      "aria-label": `item ${item.id}`,
    }) as HTMLInputElement;
    input.addEventListener("input", () => answers.set(item.id, input.value));

    const check = el(
      "button",
      {
        "data-role": "check",
        onclick: () => {
          const probe: (string | null)[] = Array(itemCount).fill(null);
          probe[item.id] = answers.get(item.id) ?? "";
          shadowCheck(ctx, { answers: probe })
            .then((summary) => {
              const verdict = summary.per_item[item.id] ?? "incorrect";
              markVerdict(cell, verdict);
              status.textContent = verdict === "correct" ? ctx.t("task.correct") : ctx.t("task.wrong");
            })
            .catch(onError);
        },
      },
      ctx.t("task.check"),
    );
    const status = el("span", { class: "item-status", "aria-live": "polite" });
    cell.append(glyphImg(ctx.api, item.image), el("figcaption", {}, input, check, status));
    board.append(cell);
  }

  host.append(
    board,
    toolbar(
      liveTimer(ctx.t),
      finishButton(ctx, host, () => ({
        answers: Array.from({ length: itemCount }, (_, i) => answers.get(i) ?? null),
      })),
    ),
  );
  return host;
}
