// Application shell: the five menus, the locale switcher, and the content
// area. Switching locale re-renders all chrome from the server catalog
// without a page reload; switching menus keeps at most one view mounted.

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { I18n } from "./i18n.js";
import { createContactView } from "./views/contact.js";
import { createHomeView } from "./views/home.js";
import { createLexiconView } from "./views/lexicon.js";
import { createTranslateView } from "./views/translate.js";

export type Menu = "home" | "gsl" | "esl" | "translate" | "contact";

export async function mountApp(root: HTMLElement, api = new ApiClient()): Promise<void> {
  const i18n = new I18n(api);
  await i18n.init();
  let active: Menu = "home";

  const render = () => {
    const t = i18n.t;
    clear(root);

    const menus: Array<[Menu, string]> = [
      ["home", t("menu.home")],
      ["gsl", t("menu.gsl")],
      ["esl", t("menu.esl")],
      ["translate", t("menu.translate")],
      ["contact", t("menu.contact")],
    ];
    const nav = el(
      "nav",
      { class: "menus", "aria-label": "main menu" },
      ...menus.map(([menu, label]) =>
        el(
          "button",
          {
            class: "menu" + (menu === active ? " active" : ""),
            "data-menu": menu,
            "aria-current": menu === active ? "page" : "false",
            onclick: () => {
              active = menu;
              render();
            },
          },
          label,
        ),
      ),
    );

    const locale = el("select", {
      class: "locale-switch",
      "aria-label": "language",
    }) as HTMLSelectElement;
    for (const code of i18n.available) {
      const option = el("option", { value: code }, code) as HTMLOptionElement;
      option.selected = code === i18n.current;
      locale.append(option);
    }
    locale.addEventListener("change", () => {
      void i18n.switchTo(locale.value).then(render);
    });

    const header = el("header", {}, el("h1", {}, t("app.title")), nav, locale);
    const main = el("main", {});
    switch (active) {
      case "home":
        main.append(createHomeView(t));
        break;
      case "gsl":
        main.append(createLexiconView(api, t, "GSL"));
        break;
      case "esl":
        main.append(createLexiconView(api, t, "ESL"));
        break;
      case "translate":
        main.append(createTranslateView(api, t));
        break;
      case "contact":
        main.append(createContactView(api, t));
        break;
    }
    root.append(header, main);
  };

  render();
}

// browser entry point; tests import mountApp directly instead
const rootElement = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootElement) {
  void mountApp(rootElement);
}
