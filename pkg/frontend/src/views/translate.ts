// GSL↔ESL translation: pick a direction and a letter group, pick a word, see
// source and target side by side with both videos and pronunciations.

import { ApiClient, EntryView } from "../api.js";
import { clear, el } from "../dom.js";
import { Translate } from "../i18n.js";
import { renderEntryCard } from "./lexicon.js";

export function createTranslateView(api: ApiClient, t: Translate): HTMLElement {
  const host = el("section", { class: "translate" });
  let source: "GSL" | "ESL" = "GSL";

  const directionButton = el(
    "button",
    {
      class: "subtab",
      "data-role": "direction",
      onclick: () => {
        source = source === "GSL" ? "ESL" : "GSL";
        renderDirection();
      },
    },
    "GSL → ESL",
  );

  const grid = el("div", { class: "alphabet-grid" });
  const words = el("div", { class: "word-list" });
  const panels = el("div", { class: "bilingual", "data-role": "panels" });

  const renderDirection = () => {
    directionButton.textContent = source === "GSL" ? "GSL → ESL" : "ESL → GSL";
    clear(words);
    clear(panels);
    clear(grid);
    api.alphabet(source).then((alphabet) => {
      for (const { letter } of alphabet.letters) {
        grid.append(
          el(
            "button",
            { class: "letter-cell", "data-letter": letter, onclick: () => showLetter(letter) },
            letter,
          ),
        );
      }
    });
  };

  const showLetter = (letter: string) => {
    clear(words);
    clear(panels);
    api.signs(source, letter).then((list) => {
      for (const entry of list.entries) {
        words.append(
          el("button", { class: "word", "data-entry": entry.id, onclick: () => show(entry) }, entry.lemma),
        );
      }
      if (list.entries.length === 0) {
        words.append(el("p", { class: "empty" }, t("lexicon.empty_group")));
      }
    });
  };

  const show = (entry: EntryView) => {
    clear(panels);
    api.translations(entry.id).then((view) => {
      const left = el("div", { class: "panel", "data-role": "source-panel" }, renderEntryCard(api, t, view.entry));
      panels.append(left);
      if (view.translations.length === 0) {
        panels.append(el("p", { class: "empty", "data-role": "no-translation" }, t("lexicon.no_translation")));
        return;
      }
      for (const target of view.translations) {
        panels.append(
          el("div", { class: "panel", "data-role": "target-panel" }, renderEntryCard(api, t, target)),
        );
      }
    });
  };

  host.append(el("div", { class: "subtabs" }, directionButton), grid, words, panels);
  renderDirection();
  return host;
}
