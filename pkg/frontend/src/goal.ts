// Goal action: the notebook's formula cells mirror the cursor as the
// candidate goal; the confirm button pins it. The confirmed goal
// stays fixed until the next confirmation.

import { Api, EntryJson } from "./api.js";
import { I18n } from "./i18n.js";
import { CommanderState } from "./state.js";

export class GoalPanel {
  private entries: EntryJson[] = [];
  private candidateKey: string | null = null;
  private confirmedKey: string | null = null;
  private container: HTMLElement | null = null;
  // Guards against an older in-flight refresh overwriting newer state.
  private epoch = 0;

  constructor(private api: Api, private i18n: I18n,
              private state: CommanderState) {}

  async refresh(): Promise<void> {
    const epoch = ++this.epoch;
    const [goal, formulae] = await Promise.all([
      this.api.getGoal(),
      this.api.sessionFormulae(),
    ]);
    if (epoch !== this.epoch) return;
    this.entries = formulae.entries;
    this.candidateKey = goal.candidate?.key ?? null;
    this.confirmedKey = goal.confirmed?.key ?? null;
    this.rerender();
  }

  private formulaFor(key: string | null): string {
    if (key === null) return "";
    return this.entries.find((e) => e.key.key === key)?.formula ?? key;
  }

  async pick(entry: EntryJson): Promise<void> {
    this.state.setCursor({ docPath: entry.key.doc_path, cellId: entry.key.cell_id });
    const res = await this.api.putCandidate(entry.key.doc_path, entry.key.cell_id);
    this.epoch++;
    this.candidateKey = res.candidate.key;
    this.confirmedKey = res.confirmed?.key ?? null;
    this.rerender();
  }

  async confirm(): Promise<void> {
    const res = await this.api.confirmGoal();
    this.epoch++;
    this.candidateKey = res.candidate.key;
    this.confirmedKey = res.confirmed.key;
    this.rerender();
  }

  render(container: HTMLElement): void {
    this.container = container;
    this.rerender();
  }

  private rerender(): void {
    const host = this.container;
    if (!host) return;
    host.innerHTML = "";
    host.className = "goal-panel";
    host.title = this.i18n.t("ui.tip.goal");

    const cells = document.createElement("ul");
    cells.className = "goal-cells";
    for (const entry of this.entries) {
      const row = document.createElement("li");
      row.dataset.key = entry.key.key;
      row.textContent = `(${entry.label}) ${entry.formula}`;
      row.title = entry.formula;
      if (entry.key.key === this.candidateKey) row.classList.add("candidate");
      if (entry.key.key === this.confirmedKey) row.classList.add("confirmed");
      row.addEventListener("click", () => void this.pick(entry));
      cells.appendChild(row);
    }
    host.appendChild(cells);

    const status = document.createElement("p");
    status.className = "goal-status";
    if (this.candidateKey === null) {
      status.textContent = this.i18n.t("ui.goal.none");
    } else {
      status.textContent = this.i18n.t("ui.goal.candidate",
        { formula: this.formulaFor(this.candidateKey) });
    }
    host.appendChild(status);

    if (this.confirmedKey !== null) {
      const pinned = document.createElement("p");
      pinned.className = "goal-confirmed";
      pinned.textContent = this.i18n.t("ui.goal.confirmed",
        { formula: this.formulaFor(this.confirmedKey) });
      host.appendChild(pinned);
    }

    const button = document.createElement("button");
    button.type = "button";
    button.className = "goal-confirm";
    button.textContent = this.i18n.t("ui.goal.confirm");
    button.disabled = this.candidateKey === null;
    button.addEventListener("click", () => void this.confirm());
    host.appendChild(button);
  }
}
