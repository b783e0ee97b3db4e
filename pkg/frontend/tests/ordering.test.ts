import { afterEach, describe, expect, it, vi } from "vitest";

import { StateView } from "../src/api.js";
import { createOrderingTask } from "../src/tasks/ordering.js";
import { flushPromises, mockFetch, sessionFixture, taskContext } from "./helpers.js";

function orderingSession() {
  return sessionFixture(
    {
      id: "order-1",
      kind: "ordering",
      items: [
        { id: 0, image: "img-0" },
        { id: 1, image: "img-1" },
        { id: 2, image: "img-2" },
      ],
      presentation: { target: "items", order: [2, 0, 1] },
    },
    { arrangement: [2, 0, 1], move_count: 0 },
  );
}

function serverState(arrangement: number[], moves: number): StateView {
  return {
    session_id: "sess-1",
    exercise_id: "order-1",
    kind: "ordering",
    open: true,
    revealed: false,
    elapsed_ms: 100,
    arrangement,
    move_count: moves,
  };
}

afterEach(() => {
  document.body.replaceChildren();
  vi.unstubAllGlobals();
});

describe("ordering task", () => {
  it("one gesture posts one move event and shows the server counter", async () => {
    let moves = 0;
    const log = mockFetch({
      "POST /api/sessions/sess-1/events": (init) => {
        const body = JSON.parse(String(init?.body));
        expect(body.type).toBe("move");
        moves += 1;
        return { state: serverState([0, 2, 1], moves) };
      },
    });
    const host = createOrderingTask(taskContext(orderingSession()));
    document.body.append(host);

    const counter = host.querySelector<HTMLElement>('[data-role="move-counter"]')!;
    expect(counter.textContent).toContain("0");

    // gesture = pick position 0, drop on position 1
    host.querySelector<HTMLElement>('[data-position="0"]')!.click();
    host.querySelector<HTMLElement>('[data-position="1"]')!.click();
    await flushPromises();

    expect(log.filter((e) => e.url.endsWith("/events"))).toHaveLength(1);
    expect(log[0].body).toEqual({ type: "move", from: 0, to: 1 });
    expect(counter.textContent).toContain("1");
  });

  it("each further gesture increments the visible counter once", async () => {
    let moves = 0;
    const log = mockFetch({
      "POST /api/sessions/sess-1/events": () => {
        moves += 1;
        return { state: serverState([2, 0, 1], moves) };
      },
    });
    const host = createOrderingTask(taskContext(orderingSession()));
    document.body.append(host);
    const counter = host.querySelector<HTMLElement>('[data-role="move-counter"]')!;

    for (let gesture = 1; gesture <= 3; gesture += 1) {
      host.querySelector<HTMLElement>('[data-position="0"]')!.click();
      host.querySelector<HTMLElement>('[data-position="2"]')!.click();
      await flushPromises();
      expect(counter.textContent).toContain(String(gesture));
    }
    expect(log.filter((e) => e.url.endsWith("/events"))).toHaveLength(3);
  });

  it("drag-and-drop maps to the same single move gesture", async () => {
    let moves = 0;
    const log = mockFetch({
      "POST /api/sessions/sess-1/events": () => {
        moves += 1;
        return { state: serverState([0, 2, 1], moves) };
      },
    });
    const host = createOrderingTask(taskContext(orderingSession()));
    document.body.append(host);

    const from = host.querySelector<HTMLElement>('[data-position="0"]')!;
    const to = host.querySelector<HTMLElement>('[data-position="2"]')!;
    const data = new Map<string, string>();
    const transfer = {
      setData: (type: string, value: string) => data.set(type, value),
      getData: (type: string) => data.get(type) ?? "",
    };
    const dragStart = new Event("dragstart") as DragEvent;
    Object.defineProperty(dragStart, "dataTransfer", { value: transfer });
    from.dispatchEvent(dragStart);
    const drop = new Event("drop", { cancelable: true }) as DragEvent;
    Object.defineProperty(drop, "dataTransfer", { value: transfer });
    to.dispatchEvent(drop);
    await flushPromises();

    expect(log[0].body).toEqual({ type: "move", from: 0, to: 2 });
  });

  it("check submits without a local arrangement so the server board decides", async () => {
    const summaries: unknown[] = [];
    mockFetch({
      "POST /api/sessions/sess-1/submit": (init) => {
        const body = JSON.parse(String(init?.body));
        summaries.push(body);
        return {
          correct_count: 1,
          total: 1,
          percentage: 100.0,
          elapsed_ms: 1500,
          revealed: false,
          moves_or_turns: 2,
          story_text: null,
          per_item: ["correct"],
        };
      },
    });
    let finished = false;
    const host = createOrderingTask(
      taskContext(orderingSession(), () => {
        finished = true;
      }),
    );
    document.body.append(host);
    host.querySelector<HTMLElement>('[data-role="finish"]')!.click();
    await flushPromises();
    expect(finished).toBe(true);
    expect(summaries[0]).toEqual({}); // no arrangement in the body
  });
});
