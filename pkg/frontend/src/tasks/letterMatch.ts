import { el } from "../dom.js";
import { TaskContext, glyphImg } from "./common.js";
import { createMatchBoard } from "./matchBoard.js";

export function createLetterMatchTask(ctx: TaskContext): HTMLElement {
  const view = ctx.session.exercise;
  const sources = (view.left ?? []).map((item) => ({
    id: item.id,
    node: el("span", { class: "big-letter", "data-label": item.letter }, item.letter),
  }));
  const targets = (view.right ?? []).map((item) => ({
    id: item.id,
    node: (() => {
      const img = glyphImg(ctx.api, item.image);
      img.setAttribute("data-label", `#${item.id}`);
      return img;
    })(),
  }));
  return createMatchBoard(ctx, sources, targets, "task-letter-match");
}
