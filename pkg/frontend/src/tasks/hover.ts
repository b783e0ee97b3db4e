// Recognition board: the character of each handshape appears while the
// cursor is over it. Tap toggles on touch devices, and focusing a card with
// the keyboard reveals it too. Nothing here is graded.

import { el } from "../dom.js";
import { TaskContext, glyphImg } from "./common.js";

export function createHoverTask(ctx: TaskContext): HTMLElement {
  const items = ctx.session.exercise.items ?? [];
  const host = el("section", { class: "task task-hover" });
  const board = el("div", { class: "board" });

  for (const item of items) {
    const letter = el("span", { class: "hover-letter", hidden: true }, item.letter ?? "");
    const card = el(
      "button",
      { class: "cell hover-card", "data-item": String(item.id), "aria-label": "reveal letter" },
      glyphImg(ctx.api, item.image),
      letter,
    );
    const show = () => {
      letter.hidden = false;
      card.classList.add("revealed");
    };
    const hide = () => {
      letter.hidden = true;
      card.classList.remove("revealed");
    };
    card.addEventListener("mouseenter", show);
    card.addEventListener("mouseleave", hide);
    card.addEventListener("focus", show);
    card.addEventListener("blur", hide);
    card.addEventListener("click", () => (letter.hidden ? show() : hide()));
    board.append(card);
  }

  host.append(board);
  return host;
}
