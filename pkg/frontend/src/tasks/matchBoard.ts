// Shared tap-to-pair board used by the letter-match and first-letter tasks:
// pick a source card, then a target card, to declare a pair. Every control is
// a real button, so the mechanic works by keyboard as well as by pointer;
// drag-and-drop would add nothing the pairing model needs.

import { ResultsSummary } from "../api.js";
import { el } from "../dom.js";
import {
  TaskContext,
  finishButton,
  liveTimer,
  markVerdict,
  shadowCheck,
  showSolutionButton,
  taskErrorHandler,
  toolbar,
} from "./common.js";

export interface MatchSide {
  id: number;
  node: HTMLElement;
}

export function createMatchBoard(
  ctx: TaskContext,
  sources: MatchSide[],
  targets: MatchSide[],
  taskClass: string,
): HTMLElement {
  const host = el("section", { class: `task ${taskClass}` });
  const onError = taskErrorHandler(ctx, host);
  const mapping = new Map<number, number>();
  let selected: MatchSide | null = null;

  const sourceCells = new Map<number, HTMLButtonElement>();
  const targetCells = new Map<number, HTMLButtonElement>();

  const refresh = () => {
    for (const [id, cell] of sourceCells) {
      cell.classList.toggle("selected", selected?.id === id);
      cell.classList.toggle("paired", mapping.has(id));
    }
    const used = new Set(mapping.values());
    for (const [id, cell] of targetCells) {
      cell.classList.toggle("paired", used.has(id));
    }
    pairs.replaceChildren(
      ...[...mapping.entries()].map(([s, t]) =>
        el(
          "li",
          { "data-pair": `${s}-${t}` },
          el("button", { class: "unpair", onclick: () => void (mapping.delete(s), refresh()) }, "×"),
          ` ${labelOf(sources, s)} → ${labelOf(targets, t)}`,
        ),
      ),
    );
  };

  const sourceRow = el("div", { class: "board row", "data-role": "sources" });
  for (const source of sources) {
    const cell = el(
      "button",
      {
        class: "cell",
        "data-source": String(source.id),
        onclick: () => {
          selected = selected?.id === source.id ? null : source;
          refresh();
        },
      },
      source.node,
    );
    sourceCells.set(source.id, cell);
    sourceRow.append(cell);
  }

  const targetRow = el("div", { class: "board row", "data-role": "targets" });
  for (const target of targets) {
    const cell = el(
      "button",
      {
        class: "cell",
        "data-target": String(target.id),
        onclick: () => {
          if (selected === null) return;
          for (const [s, t] of mapping) if (t === target.id) mapping.delete(s);
          mapping.set(selected.id, target.id);
          selected = null;
          refresh();
        },
      },
      target.node,
    );
    targetCells.set(target.id, cell);
    targetRow.append(cell);
  }

  const pairs = el("ul", { class: "pairs", "aria-live": "polite" });

  const applyVerdicts = (summary: ResultsSummary) => {
    for (const [index, verdict] of summary.per_item.entries()) {
      const cell = sourceCells.get(index);
      if (cell && mapping.has(index)) markVerdict(cell, verdict);
      else if (cell) markVerdict(cell, "incorrect");
    }
  };

  const checkAll = el(
    "button",
    {
      "data-role": "check",
      onclick: () =>
        shadowCheck(ctx, { mapping: Object.fromEntries(mapping) }).then(applyVerdicts).catch(onError),
    },
    ctx.t("task.check"),
  );

  host.append(
    sourceRow,
    targetRow,
    pairs,
    toolbar(
      liveTimer(ctx.t),
      checkAll,
      showSolutionButton(ctx, host, (result) => {
        const key = result.solution?.mapping ?? [];
        pairs.replaceChildren(
          ...key.map((t, s) =>
            el("li", { class: "solution" }, `${labelOf(sources, s)} → ${labelOf(targets, t)}`),
          ),
        );
      }),
      finishButton(ctx, host, () => ({ mapping: Object.fromEntries(mapping) })),
    ),
  );
  refresh();
  return host;
}

function labelOf(sides: MatchSide[], id: number): string {
  const side = sides.find((s) => s.id === id);
  return side?.node.getAttribute("data-label") ?? String(id);
}
