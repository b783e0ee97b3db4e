import { ApiClient } from "../api.js";
import { el } from "../dom.js";
import { Translate } from "../i18n.js";

export function createContactView(api: ApiClient, t: Translate): HTMLElement {
  const name = el("input", { type: "text", placeholder: "name" }) as HTMLInputElement;
  const email = el("input", { type: "email", placeholder: "email" }) as HTMLInputElement;
  const message = el("textarea", { rows: "6", placeholder: "…" }) as HTMLTextAreaElement;
  const status = el("p", { class: "item-status", "aria-live": "polite" });

  const send = el(
    "button",
    {
      class: "primary",
      onclick: () => {
        api
          .contact(message.value, name.value, email.value)
          .then(() => {
            status.textContent = t("contact.sent");
            message.value = "";
          })
          .catch((error) => {
            status.textContent = String(error);
          });
      },
    },
    t("contact.send"),
  );

  return el(
    "section",
    { class: "contact" },
    el("h2", {}, t("contact.title")),
    el("label", {}, name),
    el("label", {}, email),
    el("label", {}, message),
    send,
    status,
  );
}
