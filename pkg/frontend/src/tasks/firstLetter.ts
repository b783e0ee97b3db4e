import { el } from "../dom.js";
import { TaskContext, glyphImg } from "./common.js";
import { createMatchBoard } from "./matchBoard.js";

export function createFirstLetterTask(ctx: TaskContext): HTMLElement {
  const view = ctx.session.exercise;
  const sources = (view.letters ?? []).map((item) => ({
    id: item.id,
    node: (() => {
      const img = glyphImg(ctx.api, item.letter_image);
      img.setAttribute("data-label", `letter ${item.id}`);
      return img;
    })(),
  }));
  const targets = (view.pictures ?? []).map((item) => ({
    id: item.id,
    node: (() => {
      const img = glyphImg(ctx.api, item.image);
      img.classList.add("picture");
      img.setAttribute("data-label", `picture ${item.id}`);
      return img;
    })(),
  }));
  return createMatchBoard(ctx, sources, targets, "task-first-letter");
}
