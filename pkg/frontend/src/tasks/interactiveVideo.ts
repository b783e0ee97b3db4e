// Interactive video: playback halts at each checkpoint until the learner
// clicks the active point and picks an answer; seeking past an open
// checkpoint snaps back. Answers are collected locally and graded by the
// server on finish.

import { el } from "../dom.js";
import { CheckpointGate } from "./checkpointGate.js";
import { TaskContext, finishButton, liveTimer, taskErrorHandler, toolbar } from "./common.js";

export function createInteractiveVideoTask(ctx: TaskContext): HTMLElement {
  const view = ctx.session.exercise;
  const checkpoints = view.checkpoints ?? [];
  const host = el("section", { class: "task task-interactive-video" });
  taskErrorHandler(ctx, host); // banner plumbing for finish errors

  const video = el("video", {
    controls: true,
    playsinline: true,
    src: view.video ? ctx.api.mediaUrl(view.video.id) : "",
  }) as HTMLVideoElement;

  const overlay = el("div", { class: "video-overlay", hidden: true });
  const stage = el("div", { class: "video-stage" }, video, overlay);
  const progress = el("p", { class: "item-status", "aria-live": "polite" });

  const gate = new CheckpointGate(video, checkpoints, (halted) => {
    const checkpoint = checkpoints.find((cp) => cp.id === halted.id);
    if (!checkpoint) return;
    overlay.hidden = false;
    overlay.replaceChildren(
      el(
        "button",
        {
          class: "active-point",
          "data-role": "active-point",
          "aria-label": "answer this checkpoint",
          onclick: () => {
            overlay.replaceChildren(
              el(
                "div",
                { class: "options" },
                ...checkpoint.options.map((option) =>
                  el(
                    "button",
                    {
                      class: "option",
                      "data-option": String(option.id),
                      onclick: () => {
                        gate.answer(checkpoint.id, option.id);
                        overlay.hidden = true;
                        renderProgress();
                      },
                    },
                    option.text,
                  ),
                ),
              ),
            );
          },
        },
        "◉",
      ),
    );
  });

  video.addEventListener("timeupdate", () => gate.handleTimeUpdate());
  video.addEventListener("seeking", () => gate.handleSeeking());

  const renderProgress = () => {
    const answered = gate.collectAnswers().filter((a) => a !== null).length;
    progress.textContent = `${answered} / ${checkpoints.length}`;
  };

  host.append(
    stage,
    progress,
    toolbar(
      liveTimer(ctx.t),
      finishButton(ctx, host, () => ({ checkpoint_answers: gate.collectAnswers() })),
    ),
  );
  renderProgress();
  return host;
}
