// UI chrome strings come from the server's per-pack locale catalogs.

import { ApiClient } from "./api.js";

export type Translate = (key: string) => string;

export class I18n {
  private strings: Record<string, string> = {};
  current = "";
  available: string[] = [];

  constructor(private api: ApiClient) {}

  async init(): Promise<void> {
    try {
      const listing = await this.api.locales();
      this.available = listing.available;
      if (listing.default) {
        await this.switchTo(listing.default);
      }
    } catch {
      // no locales in the pack: t() falls back to the key itself
    }
  }

  async switchTo(code: string): Promise<void> {
    const catalog = await this.api.locale(code);
    this.strings = catalog.strings;
    this.current = code;
  }

  t: Translate = (key) => this.strings[key] ?? key;
}
