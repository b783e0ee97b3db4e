// Arrange-in-order task. One gesture = pick up an item (click/Enter or
// dragstart) and drop it on a position (click or drop); each gesture posts
// exactly one move event and the visible counter always shows the server's
// move_count. Check settles the session with the server-side arrangement.

import { StateView } from "../api.js";
import { el } from "../dom.js";
import {
  TaskContext,
  liveTimer,
  showSolutionButton,
  submitTask,
  taskErrorHandler,
  toolbar,
} from "./common.js";
import { glyphImg } from "./common.js";

export function createOrderingTask(ctx: TaskContext): HTMLElement {
  const view = ctx.session.exercise;
  const imageByItem = new Map((view.items ?? []).map((item) => [item.id, item.image]));

  const host = el("section", { class: "task task-ordering" });
  const onError = taskErrorHandler(ctx, host);
  const board = el("div", { class: "board row", "data-role": "board" });
  const counter = el("span", { class: "counter", "data-role": "move-counter" });
  let arrangement = ctx.session.state.arrangement ?? [];
  let picked: number | null = null; // board position currently picked up
  let busy = false;

  const renderCounter = (moves: number) => {
    counter.textContent = `${ctx.t("task.moves")}: ${moves}`;
  };

  const applyState = (state: StateView) => {
    arrangement = state.arrangement ?? arrangement;
    renderCounter(state.move_count ?? 0);
    renderBoard();
  };

  const gesture = (from: number, to: number) => {
    if (busy) return;
    busy = true;
    ctx.api
      .sendEvent(ctx.session.session_id, { type: "move", from, to })
      .then((response) => applyState(response.state))
      .catch(onError)
      .finally(() => {
        busy = false;
      });
  };

  const renderBoard = () => {
    board.replaceChildren(
      ...arrangement.map((itemId, position) => {
        const cell = el(
          "button",
          {
            class: "cell" + (picked === position ? " selected" : ""),
            "data-position": String(position),
            draggable: "true",
            "aria-label": `position ${position}`,
            onclick: () => {
              if (picked === null) {
                picked = position;
              } else {
                const from = picked;
                picked = null;
                gesture(from, position);
                return;
              }
              renderBoard();
            },
          },
          glyphImg(ctx.api, imageByItem.get(itemId) ?? ""),
        );
        cell.addEventListener("dragstart", (event) => {
          (event as DragEvent).dataTransfer?.setData("text/plain", String(position));
        });
        cell.addEventListener("dragover", (event) => event.preventDefault());
        cell.addEventListener("drop", (event) => {
          event.preventDefault();
          const raw = (event as DragEvent).dataTransfer?.getData("text/plain");
          if (raw) gesture(Number(raw), position);
        });
        return cell;
      }),
    );
  };

  const solution = el("div", { class: "solution-strip", "aria-live": "polite" });

  host.append(
    board,
    solution,
    toolbar(
      liveTimer(ctx.t),
      counter,
      showSolutionButton(ctx, host, (result) => {
        solution.textContent = `${ctx.t("task.show_solution")}: ${(result.solution?.letters ?? []).join(" ")}`;
      }),
      el(
        "button",
        {
          class: "primary",
          "data-role": "finish",
          // no arrangement in the body: the server grades its own board state
          onclick: () => submitTask(ctx, host, {}),
        },
        ctx.t("task.check"),
      ),
    ),
  );
  renderCounter(ctx.session.state.move_count ?? 0);
  renderBoard();
  return host;
}
