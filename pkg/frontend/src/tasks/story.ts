// Storytelling: watch the prompt signs, then write your own story. Stored on
// the server, never marked right or wrong.

import { el } from "../dom.js";
import { TaskContext, finishButton, liveTimer, toolbar } from "./common.js";

export function createStoryTask(ctx: TaskContext): HTMLElement {
  const view = ctx.session.exercise;
  const host = el("section", { class: "task task-story" });

  const strip = el(
    "div",
    { class: "board row" },
    ...(view.prompt_videos ?? []).map((media) =>
      el("video", {
        controls: true,
        loop: true,
        playsinline: true,
        src: media ? ctx.api.mediaUrl(media.id) : "",
      }),
    ),
  );

  const editor = el("textarea", {
    rows: "8",
    placeholder: ctx.t("task.story_placeholder"),
    "aria-label": ctx.t("task.story_placeholder"),
  }) as HTMLTextAreaElement;

  host.append(
    strip,
    editor,
    toolbar(
      liveTimer(ctx.t),
      finishButton(ctx, host, () => ({ story: editor.value })),
    ),
  );
  return host;
}
