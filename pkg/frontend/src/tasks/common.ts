import { ApiClient, ApiError, ResultsSummary, SessionCreated, SubmitBody } from "../api.js";
import { el, formatMs } from "../dom.js";
import { Translate } from "../i18n.js";

export interface TaskContext {
  api: ApiClient;
  t: Translate;
  session: SessionCreated;
  onFinish: (summary: ResultsSummary) => void;
}

/** Non-blocking error banner; session_closed jumps to the results screen. */
export function taskErrorHandler(ctx: TaskContext, host: HTMLElement) {
  return async (error: unknown) => {
    if (error instanceof ApiError && error.code === "session_closed") {
      const summary = await ctx.api.results(ctx.session.session_id).catch(() => null);
      if (summary) {
        ctx.onFinish(summary);
        return;
      }
    }
    const message = error instanceof ApiError ? error.message : String(error);
    const banner = el("div", { class: "banner", role: "alert" }, message);
    host.prepend(banner);
    setTimeout(() => banner.remove(), 4000);
  };
}

export function submitTask(ctx: TaskContext, host: HTMLElement, body: SubmitBody): void {
  ctx.api
    .submit(ctx.session.session_id, body)
    .then(ctx.onFinish)
    .catch(taskErrorHandler(ctx, host));
}

/** Cosmetic ticking timer; the results screen shows the server's time. */
export function liveTimer(t: Translate): HTMLElement {
  const label = el("span", { class: "timer", "data-role": "timer" }, `${t("task.time")} 0:00`);
  const started = Date.now();
  const interval = setInterval(() => {
    if (!label.isConnected) {
      clearInterval(interval);
      return;
    }
    label.textContent = `${t("task.time")} ${formatMs(Date.now() - started)}`;
  }, 1000);
  return label;
}

export function toolbar(...nodes: (HTMLElement | null)[]): HTMLElement {
  return el("div", { class: "toolbar" }, ...nodes.filter((n): n is HTMLElement => n !== null));
}

export function finishButton(ctx: TaskContext, host: HTMLElement, body: () => SubmitBody): HTMLButtonElement {
  return el(
    "button",
    { class: "primary", "data-role": "finish", onclick: () => submitTask(ctx, host, body()) },
    ctx.t("task.submit"),
  );
}

export function showSolutionButton(
  ctx: TaskContext,
  host: HTMLElement,
  render: (solution: NonNullable<Awaited<ReturnType<ApiClient["sendEvent"]>>["result"]>) => void,
): HTMLButtonElement {
  return el(
    "button",
    {
      "data-role": "show-solution",
      onclick: () => {
        ctx.api
          .sendEvent(ctx.session.session_id, { type: "reveal" })
          .then((response) => {
            if (response.result) render(response.result);
          })
          .catch(taskErrorHandler(ctx, host));
      },
    },
    ctx.t("task.show_solution"),
  );
}

export function glyphImg(api: ApiClient, mediaId: string, alt = ""): HTMLImageElement {
  return el("img", { class: "glyph", src: api.mediaUrl(mediaId), alt, draggable: "false" });
}

/**
 * Immediate feedback without grading in the UI and without settling the real
 * session: grade the current answers against a throwaway session for the
 * same exercise and read the server's per-item verdicts.
 */
export async function shadowCheck(ctx: TaskContext, body: SubmitBody): Promise<ResultsSummary> {
  const shadow = await ctx.api.createSession(ctx.session.exercise.id, ctx.session.seed);
  return ctx.api.submit(shadow.session_id, body);
}

export function markVerdict(node: HTMLElement, verdict: "correct" | "incorrect" | "ungraded"): void {
  node.classList.remove("correct", "incorrect");
  if (verdict !== "ungraded") node.classList.add(verdict);
}
