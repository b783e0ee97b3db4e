import { el } from "../dom.js";
import { Translate } from "../i18n.js";

export function createHomeView(t: Translate): HTMLElement {
  return el(
    "section",
    { class: "home" },
    el("h2", {}, t("app.title")),
    el("p", {}, t("home.intro")),
  );
}
