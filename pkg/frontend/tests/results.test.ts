import { afterEach, describe, expect, it } from "vitest";

import { createResultsView } from "../src/views/results.js";
import { summaryFixture } from "./helpers.js";

const t = (key: string) => key;

afterEach(() => document.body.replaceChildren());

describe("results screen", () => {
  it("shows score, elapsed time and moves exactly as the server reported", () => {
    const view = createResultsView(
      t,
      summaryFixture({
        correct_count: 6,
        total: 8,
        percentage: 75.0,
        elapsed_ms: 83_000,
        moves_or_turns: 14,
      }),
      () => {},
    );
    document.body.append(view);

    expect(view.querySelector('[data-role="score"]')!.textContent).toBe("6 / 8 (75%)");
    expect(view.querySelector('[data-role="time"]')!.textContent).toBe("1:23");
    expect(view.querySelector('[data-role="moves"]')!.textContent).toBe("14");
    expect(view.querySelector('[data-role="revealed"]')).toBeNull();
  });

  it("omits moves when the task has no counter", () => {
    const view = createResultsView(t, summaryFixture({ moves_or_turns: null }), () => {});
    expect(view.querySelector('[data-role="moves"]')).toBeNull();
  });

  it("flags a revealed solution", () => {
    const view = createResultsView(t, summaryFixture({ revealed: true }), () => {});
    expect(view.querySelector('[data-role="revealed"]')).not.toBeNull();
  });

  it("shows the stored story for storytelling, without a score row", () => {
    const story = "Μια γάτα.\nThe cat signs.";
    const view = createResultsView(
      t,
      summaryFixture({
        correct_count: 0,
        total: 0,
        percentage: 0.0,
        story_text: story,
        per_item: ["ungraded"],
      }),
      () => {},
    );
    expect(view.querySelector('[data-role="story"]')!.textContent).toBe(story);
    expect(view.querySelector('[data-role="score"]')).toBeNull();
  });

  it("renders one verdict mark per graded item", () => {
    const view = createResultsView(
      t,
      summaryFixture({ per_item: ["correct", "incorrect", "correct"], correct_count: 2, total: 3, percentage: 66.7 }),
      () => {},
    );
    const marks = view.querySelectorAll(".verdict");
    expect(marks).toHaveLength(3);
    expect(marks[0].classList.contains("correct")).toBe(true);
    expect(marks[1].classList.contains("incorrect")).toBe(true);
  });

  it("zero-second summaries format as 0:00", () => {
    const view = createResultsView(t, summaryFixture({ elapsed_ms: 400 }), () => {});
    expect(view.querySelector('[data-role="time"]')!.textContent).toBe("0:00");
  });
});
