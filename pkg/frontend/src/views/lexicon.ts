// Per-language menu: alphabet presentation, sign search by first letter
// (with word detail: text, looping sign video, pronunciation), and the
// practice task list.

import { ApiClient, EntryView } from "../api.js";
import { clear, el } from "../dom.js";
import { Translate } from "../i18n.js";
import { createPracticeView } from "./practice.js";

export function createLexiconView(api: ApiClient, t: Translate, language: "GSL" | "ESL"): HTMLElement {
  const host = el("section", { class: "lexicon" });
  const tabs = el("nav", { class: "subtabs" });
  const body = el("div", { class: "lexicon-body" });

  const sections: Array<[string, () => void]> = [
    [t("lexicon.alphabet"), () => renderAlphabet(api, t, language, clear(body))],
    [t("practice.title"), () => clear(body).append(createPracticeView(api, t, language))],
  ];
  for (const [label, activate] of sections) {
    tabs.append(el("button", { class: "subtab", onclick: activate }, label));
  }
  host.append(tabs, body);
  renderAlphabet(api, t, language, body);
  return host;
}

function renderAlphabet(api: ApiClient, t: Translate, language: string, body: HTMLElement): void {
  const grid = el("div", { class: "alphabet-grid", "data-role": "alphabet" });
  const words = el("div", { class: "word-list" });
  const detail = el("div", { class: "word-detail" });
  body.append(grid, words, detail);

  api
    .alphabet(language)
    .then((alphabet) => {
      for (const { letter, glyph_image } of alphabet.letters) {
        grid.append(
          el(
            "button",
            {
              class: "letter-cell",
              "data-letter": letter,
              onclick: () => showLetter(letter),
            },
            glyph_image ? el("img", { class: "glyph small", src: api.mediaUrl(glyph_image), alt: letter }) : null,
            el("span", { class: "letter-label" }, letter),
          ),
        );
      }
    })
    .catch(() => grid.append(el("p", { class: "banner" }, "failed to load the alphabet")));

  const showLetter = (letter: string) => {
    clear(detail);
    clear(words);
    api.signs(language, letter).then((list) => {
      if (list.entries.length === 0) {
        words.append(el("p", { class: "empty" }, t("lexicon.empty_group")));
        return;
      }
      for (const entry of list.entries) {
        words.append(
          el(
            "button",
            { class: "word", "data-entry": entry.id, onclick: () => showEntry(entry) },
            entry.lemma,
          ),
        );
      }
    });
  };

  const showEntry = (entry: EntryView) => {
    clear(detail).append(renderEntryCard(api, t, entry));
  };
}

export function renderEntryCard(api: ApiClient, t: Translate, entry: EntryView): HTMLElement {
  const video = el("video", {
    controls: true,
    loop: true,
    playsinline: true,
    src: api.mediaUrl(entry.sign_video.id),
  }) as HTMLVideoElement;
  const replay = el(
    "button",
    {
      "data-role": "replay",
      onclick: () => {
        video.currentTime = 0;
        void video.play();
      },
    },
    t("lexicon.replay"),
  );
  const children: (HTMLElement | null)[] = [
    el("h3", { class: "lemma" }, entry.lemma),
    entry.gloss ? el("p", { class: "gloss" }, entry.gloss) : null,
    video,
    replay,
  ];
  if (entry.pronunciation_audio) {
    const audio = el("audio", { src: api.mediaUrl(entry.pronunciation_audio.id) }) as HTMLAudioElement;
    children.push(
      audio,
      el(
        "button",
        { "data-role": "pronounce", onclick: () => void audio.play() },
        t("lexicon.pronunciation"),
      ),
    );
  }
  return el("article", { class: "entry-card", "data-entry": entry.id }, ...children);
}
