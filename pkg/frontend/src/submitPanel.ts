// Submit action: a read-only snapshot preview for the final check,
// the Prove button, and restore-settings. Prove posts the submission
// and advances straight to the inspect action.

import { Api, ApiError, SnapshotJson } from "./api.js";
import { I18n } from "./i18n.js";
import { CommanderState } from "./state.js";

export class SubmitPanel {
  snapshot: SnapshotJson | null = null;
  error: string | null = null;
  private container: HTMLElement | null = null;

  constructor(private api: Api, private i18n: I18n,
              private state: CommanderState,
              private onProve?: (proofId: string) => void) {}

  async refresh(): Promise<void> {
    this.snapshot = (await this.api.snapshotPreview()).snapshot;
    this.error = null;
    this.rerender();
  }

  async prove(): Promise<void> {
    try {
      const res = await this.api.submitProof();
      this.state.setProof(res.proof_id);
      this.state.setAction("inspect");
      if (this.onProve) this.onProve(res.proof_id);
    } catch (err) {
      this.error = err instanceof ApiError ? err.message : String(err);
      this.rerender();
    }
  }

  async restore(proofId: string): Promise<void> {
    await this.api.restoreSettings(proofId);
    await this.refresh();
  }

  render(container: HTMLElement): void {
    this.container = container;
    this.rerender();
  }

  private section(title: string, lines: string[]): HTMLElement {
    const box = document.createElement("div");
    box.className = "snapshot-section";
    const head = document.createElement("h3");
    head.textContent = title;
    box.appendChild(head);
    const list = document.createElement("ul");
    for (const line of lines) {
      const item = document.createElement("li");
      item.textContent = line;
      list.appendChild(item);
    }
    box.appendChild(list);
    return box;
  }

  private rerender(): void {
    const host = this.container;
    if (!host) return;
    host.innerHTML = "";
    host.className = "submit-panel";
    host.title = this.i18n.t("ui.tip.submit");

    const snap = this.snapshot;
    if (snap) {
      const goal = snap.goal_key
        ? [`${snap.goal_key[0]} #${snap.goal_key[1]}`]
        : [this.i18n.t("ui.goal.none")];
      host.appendChild(this.section(this.i18n.t("ui.snapshot.goal"), goal));
      host.appendChild(this.section(
        this.i18n.t("ui.snapshot.knowledge"),
        snap.knowledge.map(([path, cid]) => `${path} #${cid}`)));
      host.appendChild(this.section(
        this.i18n.t("ui.snapshot.builtins"), [...snap.builtins]));
      host.appendChild(this.section(
        this.i18n.t("ui.snapshot.rules"),
        snap.rule_states.map((r) => {
          const flags = [r.active ? "on" : "off", `p${r.priority}`];
          if (r.explain) flags.push("explain");
          return `${r.rule_id} (${flags.join(", ")})`;
        })));
      host.appendChild(this.section(
        this.i18n.t("ui.snapshot.strategy"),
        [
          snap.strategy_id,
          `alternatives: ${snap.alternatives}`,
          `depth ${snap.limits.max_depth}, nodes ${snap.limits.max_nodes}, ` +
            `timeout ${snap.limits.timeout}`,
          snap.language,
        ]));
    }

    if (this.error !== null) {
      const p = document.createElement("p");
      p.className = "submit-error";
      p.textContent = this.error;
      host.appendChild(p);
    }

    const prove = document.createElement("button");
    prove.type = "button";
    prove.className = "prove-button";
    prove.textContent = this.i18n.t("ui.prove");
    prove.addEventListener("click", () => void this.prove());
    host.appendChild(prove);

    const proofId = this.state.currentProofId;
    if (proofId !== null) {
      const restore = document.createElement("button");
      restore.type = "button";
      restore.className = "restore-button";
      restore.textContent = this.i18n.t("ui.restore-settings");
      restore.addEventListener("click", () => void this.restore(proofId));
      host.appendChild(restore);
    }
  }
}
