import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { GlyphView, StateView } from "../src/api.js";
import { MISMATCH_SHOW_MS, createMemoryTask } from "../src/tasks/memory.js";
import { mockFetch, sessionFixture, taskContext } from "./helpers.js";

const ALPHA: GlyphView = { language: "GSL", letter: "Α", image: "img-alpha" };
const LATIN_A: GlyphView = { language: "ESL", letter: "A", image: "img-a" };
const BETA: GlyphView = { language: "GSL", letter: "Β", image: "img-beta" };

function memorySession() {
  return sessionFixture(
    { id: "mem-1", kind: "memory_cards", deck_size: 4, pair_count: 2 },
    { deck_size: 4, face_up: [], matched: [], turn_count: 0, revealed_cards: {}, complete: false },
  );
}

function state(partial: Partial<StateView>): StateView {
  return {
    session_id: "sess-1",
    exercise_id: "mem-1",
    kind: "memory_cards",
    open: true,
    revealed: false,
    elapsed_ms: 10,
    deck_size: 4,
    face_up: [],
    matched: [],
    turn_count: 0,
    revealed_cards: {},
    complete: false,
    ...partial,
  };
}

beforeEach(() => vi.useFakeTimers());
afterEach(() => {
  vi.useRealTimers();
  document.body.replaceChildren();
  vi.unstubAllGlobals();
});

describe("memory cards task", () => {
  it("a flip reveals the card the server reports", async () => {
    mockFetch({
      "POST /api/sessions/sess-1/events": () => ({
        state: state({ face_up: [0], turn_count: 1, revealed_cards: { "0": ALPHA } }),
        result: { card: 0, side: "gsl", matched: null, hidden: [] },
      }),
    });
    const host = createMemoryTask(taskContext(memorySession()));
    document.body.append(host);

    host.querySelector<HTMLElement>('[data-card="0"]')!.click();
    await vi.advanceTimersByTimeAsync(10);

    const card = host.querySelector<HTMLElement>('[data-card="0"]')!;
    expect(card.classList.contains("face-up")).toBe(true);
    expect(card.querySelector(".card-letter")!.textContent).toBe("Α");
    expect(host.querySelector('[data-role="turn-counter"]')!.textContent).toContain("1");
  });

  it("a failed pair shows both cards briefly, then hides them", async () => {
    let flips = 0;
    mockFetch({
      "POST /api/sessions/sess-1/events": () => {
        flips += 1;
        if (flips === 1) {
          return {
            state: state({ face_up: [0], turn_count: 1, revealed_cards: { "0": ALPHA } }),
            result: { card: 0, side: "gsl", matched: null, hidden: [] },
          };
        }
        return {
          state: state({ turn_count: 2 }), // server already hid both
          result: {
            card: 2,
            side: "gsl",
            matched: false,
            hidden: [0, 2],
            glyphs: { "0": ALPHA, "2": BETA },
          },
        };
      },
    });
    const host = createMemoryTask(taskContext(memorySession()));
    document.body.append(host);

    host.querySelector<HTMLElement>('[data-card="0"]')!.click();
    await vi.advanceTimersByTimeAsync(10);
    host.querySelector<HTMLElement>('[data-card="2"]')!.click();
    await vi.advanceTimersByTimeAsync(10); // let the fetch promise settle

    const first = host.querySelector<HTMLElement>('[data-card="0"]')!;
    const second = host.querySelector<HTMLElement>('[data-card="2"]')!;
    expect(first.classList.contains("face-up")).toBe(true);
    expect(second.classList.contains("face-up")).toBe(true);
    expect(second.querySelector(".card-letter")!.textContent).toBe("Β");

    await vi.advanceTimersByTimeAsync(MISMATCH_SHOW_MS + 50);
    expect(first.classList.contains("face-up")).toBe(false);
    expect(second.classList.contains("face-up")).toBe(false);
    expect(host.querySelector('[data-role="turn-counter"]')!.textContent).toContain("2");
  });

  it("a matched pair stays up and completion enables finishing", async () => {
    let flips = 0;
    mockFetch({
      "POST /api/sessions/sess-1/events": () => {
        flips += 1;
        if (flips === 1) {
          return {
            state: state({ face_up: [1], turn_count: 1, revealed_cards: { "1": ALPHA } }),
            result: { card: 1, side: "gsl", matched: null, hidden: [] },
          };
        }
        return {
          state: state({
            matched: [1, 3],
            turn_count: 2,
            revealed_cards: { "1": ALPHA, "3": LATIN_A },
            complete: false,
          }),
          result: { card: 3, side: "esl", matched: true, pair: [1, 3], hidden: [] },
        };
      },
      "POST /api/sessions/sess-1/submit": () => ({
        correct_count: 2,
        total: 2,
        percentage: 100.0,
        elapsed_ms: 900,
        revealed: false,
        moves_or_turns: 4,
        story_text: null,
        per_item: ["correct", "correct"],
      }),
    });
    const host = createMemoryTask(taskContext(memorySession()));
    document.body.append(host);

    host.querySelector<HTMLElement>('[data-card="1"]')!.click();
    await vi.advanceTimersByTimeAsync(10);
    host.querySelector<HTMLElement>('[data-card="3"]')!.click();
    await vi.advanceTimersByTimeAsync(10);

    const matched = host.querySelector<HTMLElement>('[data-card="1"]')!;
    expect(matched.classList.contains("matched")).toBe(true);
    expect((matched as HTMLButtonElement).disabled).toBe(true);
    expect((host.querySelector('[data-role="finish"]') as HTMLButtonElement).disabled).toBe(true);
  });

  it("finish becomes available once the server says complete", async () => {
    mockFetch({
      "POST /api/sessions/sess-1/events": () => ({
        state: state({
          matched: [0, 1, 2, 3],
          turn_count: 6,
          revealed_cards: { "0": ALPHA, "1": LATIN_A, "2": BETA, "3": BETA },
          complete: true,
        }),
        result: { card: 3, side: "esl", matched: true, pair: [2, 3], hidden: [] },
      }),
    });
    const host = createMemoryTask(taskContext(memorySession()));
    document.body.append(host);
    host.querySelector<HTMLElement>('[data-card="3"]')!.click();
    await vi.advanceTimersByTimeAsync(10);
    expect((host.querySelector('[data-role="finish"]') as HTMLButtonElement).disabled).toBe(false);
  });
});
