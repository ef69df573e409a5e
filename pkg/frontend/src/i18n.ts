// Chrome strings come from the service catalog; nothing user-visible
// is hardcoded here. Unknown slots stay visible, mirroring the server.

import type { Api } from "./api.js";

export function fill(template: string, slots: Record<string, string> = {}): string {
  return template.replace(/\{([^{}]+)\}/g, (whole, name: string) =>
    Object.prototype.hasOwnProperty.call(slots, name) ? slots[name] : whole);
}

export class I18n {
  language = "en";
  private entries: Record<string, string> = {};

  async load(api: Api, lang?: string): Promise<void> {
    const data = await api.catalog(lang);
    this.language = data.language;
    this.entries = data.entries;
  }

  t(key: string, slots?: Record<string, string>): string {
    const value = this.entries[key];
    if (value === undefined) return key; // visible, greppable failure
    return fill(value, slots);
  }

  has(key: string): boolean {
    return this.entries[key] !== undefined;
  }
}
