// Memory cards: every flip is a server event; the server decides matches and
// is the only party that knows the deck. A failed pair stays visible for a
// moment (the flip result carries both glyphs) before turning back
// face-down, and the visible counter mirrors the server's turn_count.

import { GlyphView, StateView } from "../api.js";
import { el } from "../dom.js";
import { TaskContext, liveTimer, submitTask, taskErrorHandler, toolbar } from "./common.js";

export const MISMATCH_SHOW_MS = 900;

export function createMemoryTask(ctx: TaskContext): HTMLElement {
  const deckSize = ctx.session.exercise.deck_size ?? 0;
  const host = el("section", { class: "task task-memory" });
  const onError = taskErrorHandler(ctx, host);
  const counter = el("span", { class: "counter", "data-role": "turn-counter" });
  const finish = el(
    "button",
    { class: "primary", "data-role": "finish", disabled: true, onclick: () => submitTask(ctx, host, {}) },
    ctx.t("task.submit"),
  ) as HTMLButtonElement;

  const cards: HTMLButtonElement[] = [];
  let busy = false;

  const board = el("div", { class: "board memory-grid", "data-role": "board" });
  for (let position = 0; position < deckSize; position += 1) {
    const card = el(
      "button",
      {
        class: "cell memory-card",
        "data-card": String(position),
        "aria-label": `card ${position + 1}`,
        onclick: () => flip(position),
      },
      el("span", { class: "card-back" }, "?"),
    );
    cards.push(card);
    board.append(card);
  }

  const face = (glyph: GlyphView): HTMLElement =>
    el(
      "span",
      { class: "card-face" },
      el("img", { class: "glyph", src: ctx.api.mediaUrl(glyph.image), alt: glyph.letter }),
      el("span", { class: "card-letter" }, glyph.letter),
    );

  const render = (state: StateView, extraFaces: Record<string, GlyphView> = {}) => {
    counter.textContent = `${ctx.t("task.turns")}: ${state.turn_count ?? 0}`;
    const faces: Record<string, GlyphView> = { ...state.revealed_cards, ...extraFaces };
    cards.forEach((card, position) => {
      const glyph = faces[String(position)];
      card.classList.toggle("matched", (state.matched ?? []).includes(position));
      card.classList.toggle("face-up", Boolean(glyph));
      card.replaceChildren(glyph ? face(glyph) : el("span", { class: "card-back" }, "?"));
      card.disabled = busy || (state.matched ?? []).includes(position) || !state.open;
    });
    finish.disabled = !state.complete || !state.open;
  };

  const flip = (position: number) => {
    if (busy) return;
    busy = true;
    ctx.api
      .sendEvent(ctx.session.session_id, { type: "flip", card: position })
      .then((response) => {
        const hidden = response.result?.hidden ?? [];
        if (hidden.length > 0) {
          render(response.state, response.result?.glyphs ?? {});
          setTimeout(() => {
            busy = false;
            render(response.state);
          }, MISMATCH_SHOW_MS);
        } else {
          busy = false;
          render(response.state);
        }
      })
      .catch((error) => {
        busy = false;
        onError(error);
      });
  };

  host.append(board, toolbar(liveTimer(ctx.t), counter, finish));
  render(ctx.session.state);
  return host;
}
