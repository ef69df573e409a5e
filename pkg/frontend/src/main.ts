// Browser entry point. Loads the catalog for the stored language
// preference, then mounts the Commander.

import { Api } from "./api.js";
import { I18n } from "./i18n.js";
import { CommanderState } from "./state.js";
import { Commander } from "./app.js";

async function boot(): Promise<void> {
  const api = new Api();
  const i18n = new I18n();
  await i18n.load(api);
  const commander = new Commander(api, i18n, new CommanderState());
  const root = document.getElementById("app");
  if (root) commander.render(root);
}

void boot();
