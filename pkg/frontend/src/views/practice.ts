// Practice hub: list the exercises for one language, start a session, hand
// the open session to the matching task component, and land on the results
// screen when the server settles it.

import { ApiClient, ResultsSummary, SessionCreated } from "../api.js";
import { clear, el } from "../dom.js";
import { Translate } from "../i18n.js";
import { TaskContext } from "../tasks/common.js";
import { createFirstLetterTask } from "../tasks/firstLetter.js";
import { createHoverTask } from "../tasks/hover.js";
import { createInteractiveVideoTask } from "../tasks/interactiveVideo.js";
import { createLetterMatchTask } from "../tasks/letterMatch.js";
import { createMemoryTask } from "../tasks/memory.js";
import { createOrderingTask } from "../tasks/ordering.js";
import { createStoryTask } from "../tasks/story.js";
import { createTextEntryTask } from "../tasks/textEntry.js";
import { createVideoMcqTask } from "../tasks/videoMcq.js";
import { createResultsView } from "./results.js";

const TASK_FACTORIES: Record<string, (ctx: TaskContext) => HTMLElement> = {
  letter_text_entry: createTextEntryTask,
  letter_match: createLetterMatchTask,
  ordering: createOrderingTask,
  hover_reveal: createHoverTask,
  video_multiple_choice: createVideoMcqTask,
  first_letter_match: createFirstLetterTask,
  storytelling: createStoryTask,
  memory_cards: createMemoryTask,
  interactive_video: createInteractiveVideoTask,
};

const KIND_LABELS: Record<string, string> = {
  letter_text_entry: "Type the letter",
  letter_match: "Match letter and sign",
  ordering: "Arrange in correct order",
  hover_reveal: "Recognize the letters",
  video_multiple_choice: "Video quiz",
  first_letter_match: "First letter of the word",
  storytelling: "Storytelling",
  memory_cards: "Memory cards",
  interactive_video: "Interactive video",
};

export function createPracticeView(api: ApiClient, t: Translate, language?: "GSL" | "ESL"): HTMLElement {
  const host = el("section", { class: "practice", "data-role": "practice" });

  const renderList = () => {
    clear(host);
    const list = el("div", { class: "exercise-list" });
    host.append(el("h2", {}, t("practice.title")), list);
    api.exercises(language ? { language } : undefined).then((body) => {
      for (const exercise of body.exercises) {
        list.append(
          el(
            "button",
            { class: "exercise-card", "data-exercise": exercise.id, onclick: () => start(exercise.id) },
            el("strong", {}, KIND_LABELS[exercise.kind] ?? exercise.kind),
            el("span", { class: "muted" }, ` · ${exercise.language} · ${exercise.item_count}`),
          ),
        );
      }
    });
  };

  const start = (exerciseId: string) => {
    api.createSession(exerciseId).then((session) => runTask(session));
  };

  const runTask = (session: SessionCreated) => {
    clear(host);
    const factory = TASK_FACTORIES[session.exercise.kind];
    const onFinish = (summary: ResultsSummary) => {
      clear(host);
      host.append(createResultsView(t, summary, renderList));
    };
    host.append(
      el("h2", {}, KIND_LABELS[session.exercise.kind] ?? session.exercise.kind),
      factory({ api, t, session, onFinish }),
    );
  };

  renderList();
  return host;
}
