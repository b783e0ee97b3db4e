// Watch a sign video, choose its meaning. Check gives immediate feedback via
// a shadow grade; Finish settles the session with the chosen option.

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

export function createVideoMcqTask(ctx: TaskContext): HTMLElement {
  const view = ctx.session.exercise;
  const host = el("section", { class: "task task-video-mcq" });
  const onError = taskErrorHandler(ctx, host);
  let chosen: number | null = null;

  const video = el("video", {
    controls: true,
    loop: true,
    playsinline: true,
    src: view.video ? ctx.api.mediaUrl(view.video.id) : "",
  });

  const optionButtons = new Map<number, HTMLButtonElement>();
  const options = el(
    "div",
    { class: "options", role: "radiogroup" },
    ...(view.options ?? []).map((option) => {
      const button = el(
        "button",
        {
          class: "option",
          "data-option": String(option.id),
          role: "radio",
          onclick: () => {
            chosen = option.id;
            for (const [id, b] of optionButtons) {
              b.classList.toggle("selected", id === option.id);
              b.setAttribute("aria-checked", String(id === option.id));
            }
          },
        },
        option.text,
      );
      optionButtons.set(option.id, button);
      return button;
    }),
  );

  const feedback = el("p", { class: "item-status", "aria-live": "polite" });
  host.append(
    video,
    options,
    feedback,
    toolbar(
      liveTimer(ctx.t),
      el(
        "button",
        {
          "data-role": "check",
          onclick: () =>
            shadowCheck(ctx, { option: chosen ?? undefined })
              .then((summary) => {
                const verdict = summary.per_item[0] ?? "incorrect";
                feedback.textContent =
                  verdict === "correct" ? ctx.t("task.correct") : ctx.t("task.wrong");
                if (chosen !== null) markVerdict(optionButtons.get(chosen)!, verdict);
              })
              .catch(onError),
        },
        ctx.t("task.check"),
      ),
      showSolutionButton(ctx, host, (result) => {
        feedback.textContent = `${ctx.t("task.show_solution")}: ${result.solution?.text ?? ""}`;
      }),
      finishButton(ctx, host, () => ({ option: chosen ?? undefined })),
    ),
  );
  return host;
}
