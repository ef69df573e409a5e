// Scripted walk through the prove wizard: goal, knowledge, built-in,
// prover, submit, inspect, all driven through the rendered DOM against
// the in-memory server. The final tree must be isomorphic to what the
// service reports, and the chrome must follow the service catalog in
// either language.

import { beforeEach, describe, expect, it } from "vitest";
import { Api, TreeJson } from "../src/api.js";
import { I18n } from "../src/i18n.js";
import { CommanderState } from "../src/state.js";
import { Commander } from "../src/app.js";
import { GoalPanel } from "../src/goal.js";
import { FakeServer, fixture } from "./fakeServer.js";

const DOC = fixture.doc_path;

async function settle(rounds = 8): Promise<void> {
  for (let i = 0; i < rounds; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

interface Setup {
  server: FakeServer;
  api: Api;
  i18n: I18n;
  state: CommanderState;
  commander: Commander;
  root: HTMLElement;
}

async function mount(): Promise<Setup> {
  const server = new FakeServer();
  const api = new Api("/api/v1", server.fetch);
  const i18n = new I18n();
  await i18n.load(api);
  const state = new CommanderState();
  const commander = new Commander(api, i18n, state);
  const root = document.createElement("div");
  document.body.appendChild(root);
  commander.render(root);
  await settle();
  return { server, api, i18n, state, commander, root };
}

function click(root: HTMLElement, selector: string): void {
  const el = root.querySelector<HTMLElement>(selector);
  if (!el) throw new Error(`nothing matches ${selector}`);
  el.click();
}

function change(root: HTMLElement, selector: string): void {
  const el = root.querySelector<HTMLElement>(selector);
  if (!el) throw new Error(`nothing matches ${selector}`);
  el.dispatchEvent(new Event("change"));
}

describe("prove wizard", () => {
  let setup: Setup;

  beforeEach(async () => {
    document.body.innerHTML = "";
    setup = await mount();
  });

  it("walks goal, knowledge, built-in, prover, submit, inspect", async () => {
    const { server, state, commander, root } = setup;

    // the wizard opens on the prove activity at its leftmost action
    expect(state.activity).toBe("prove");
    expect(state.action).toBe("goal");
    const tabs = [...root.querySelectorAll<HTMLElement>(".action-tabs button")]
      .map((b) => b.dataset.action);
    expect(tabs).toEqual(
      ["goal", "knowledge", "builtin", "prover", "submit", "inspect"]);

    // goal: click the goal cell, then confirm
    click(root, `.goal-cells li[data-key="${DOC}#3"]`);
    await settle();
    click(root, ".goal-confirm");
    await settle();
    expect(server.goalConfirmed?.key.cell_id).toBe(3);

    // knowledge: a leaf toggle, then the whole document back on
    click(root, '.action-tabs button[data-action="knowledge"]');
    await settle();
    change(root, `.knowledge-browser li[data-unit="${DOC}#1"] input`);
    await settle();
    expect(server.knowledgeSelected.get(`${DOC}#1`)).toBe(false);
    const docBox = root.querySelector<HTMLInputElement>(
      `.knowledge-browser li[data-unit="document:${DOC}"] > input`)!;
    expect(docBox.indeterminate).toBe(true);
    change(root, `.knowledge-browser li[data-unit="document:${DOC}"] > input`);
    await settle();
    expect(server.knowledgeSelected.get(`${DOC}#1`)).toBe(true);
    const putDoc = server.log.find((r) =>
      r.method === "PUT" && r.path === "/prove/knowledge" &&
      (r.body as { unit: { kind: string } }).unit.kind === "document");
    expect(putDoc).toBeDefined();

    // a label click moves the cursor to the formula's cell
    click(root, `.knowledge-browser li[data-unit="${DOC}#2"] .tree-label`);
    await settle();
    expect(state.cursor).toEqual({ docPath: DOC, cellId: 2 });

    // built-in: drop one member, group becomes partial, group click restores
    click(root, '.action-tabs button[data-action="builtin"]');
    await settle();
    change(root, '.builtin-browser li[data-unit="arithmetic.plus"] input');
    await settle();
    expect(server.builtinSelected.get("arithmetic.plus")).toBe(false);
    const groupBox = root.querySelector<HTMLInputElement>(
      '.builtin-browser li[data-unit="group:arithmetic"] > input')!;
    expect(groupBox.indeterminate).toBe(true);
    change(root, '.builtin-browser li[data-unit="group:arithmetic"] > input');
    await settle();
    expect(server.builtinSelected.get("arithmetic.plus")).toBe(true);

    // prover: deactivate a rule, raise another's priority, ask for detail
    click(root, '.action-tabs button[data-action="prover"]');
    await settle();
    const activeBox = root.querySelector<HTMLInputElement>(
      '.rule-row[data-unit="impl-goal-contrapose"] .rule-active')!;
    activeBox.checked = false;
    activeBox.dispatchEvent(new Event("change"));
    await settle();
    expect(server.rules.find((r) => r.rule_id === "impl-goal-contrapose")!
      .active).toBe(false);
    const priority = root.querySelector<HTMLSelectElement>(
      '.rule-row[data-unit="forall-kb-instantiate"] .rule-priority')!;
    priority.value = "50";
    priority.dispatchEvent(new Event("change"));
    await settle();
    expect(server.rules.find((r) => r.rule_id === "forall-kb-instantiate")!
      .priority).toBe(50);
    const explain = root.querySelector<HTMLInputElement>(
      '.rule-row[data-unit="goal-in-kb"] .rule-explain')!;
    explain.checked = true;
    explain.dispatchEvent(new Event("change"));
    await settle();
    expect(server.rules.find((r) => r.rule_id === "goal-in-kb")!
      .explain).toBe(true);
    const strategies = [...root.querySelectorAll<HTMLOptionElement>(
      ".strategy-select option")].map((o) => o.value);
    expect(strategies).toEqual(fixture.strategy.strategies);

    // submit: the preview lists the collected settings, Prove fires
    click(root, '.action-tabs button[data-action="submit"]');
    await settle();
    const goalSection = root.querySelector(".snapshot-section")!;
    expect(goalSection.textContent).toContain(`${DOC} #3`);
    click(root, ".prove-button");
    await settle(16);

    // the wizard advanced to inspect on its own
    expect(state.action).toBe("inspect");
    expect(state.currentProofId).toBe(fixture.proof_id);

    // the streamed tree is isomorphic to what the service reports
    const treeFromServer = (fixture.tree.tree) as TreeJson;
    expect(commander.inspectView.toTreeJson()).toEqual(treeFromServer);

    // the submitted snapshot reflects the wizard's configuration
    expect(server.submitted?.goal_key).toEqual([DOC, 3]);
    expect(server.submitted?.rule_states.find(
      (r) => r.rule_id === "impl-goal-contrapose")!.active).toBe(false);
    expect(server.submitted?.rule_states.find(
      (r) => r.rule_id === "forall-kb-instantiate")!.priority).toBe(50);

    // node click scrolls to its text block; block click marks the node
    click(root, '.tree-node[data-node="1"]');
    expect(commander.inspectView.lastScrolledBlock).toBe("b4");
    expect(root.querySelector('.proof-block[data-block="b4"]')!
      .classList.contains("highlight")).toBe(true);
    click(root, '.proof-block[data-block="b8"]');
    const marked = root.querySelector<HTMLElement>(".tree-node.marked")!;
    expect(marked.dataset.node).toBe("5");
    expect(marked.querySelector(".node-mark")!.textContent).toBe("▸");
  });

  it("restore-settings brings back the submitted configuration", async () => {
    const { server, api, root, state } = setup;

    click(root, `.goal-cells li[data-key="${DOC}#3"]`);
    await settle();
    click(root, ".goal-confirm");
    await settle();
    state.setAction("submit");
    await settle();
    click(root, ".prove-button");
    await settle(16);

    // mutate after the submission, then restore
    await api.putRule("modus-ponens", { active: false, priority: 99 });
    expect(server.rules.find((r) => r.rule_id === "modus-ponens")!
      .active).toBe(false);
    state.setAction("submit");
    await settle();
    click(root, ".restore-button");
    await settle();
    const rule = server.rules.find((r) => r.rule_id === "modus-ponens")!;
    expect(rule.active).toBe(true);
    expect(rule.priority).not.toBe(99);
  });

  it("submit without a confirmed goal reports the conflict", async () => {
    const { state, root, server } = setup;
    state.setAction("submit");
    await settle();
    click(root, ".prove-button");
    await settle();
    expect(server.submitted).toBeNull();
    expect(root.querySelector(".submit-error")).not.toBeNull();
    expect(state.action).toBe("submit");
  });
});

describe("goal panel", () => {
  it("pins the confirmed goal until the next confirmation", async () => {
    const server = new FakeServer();
    const api = new Api("/api/v1", server.fetch);
    const panel = new GoalPanel(api, new I18n(), new CommanderState());
    const host = document.createElement("div");
    panel.render(host);
    await panel.refresh();

    // no candidate yet: confirm must be disabled
    expect(host.querySelector<HTMLButtonElement>(".goal-confirm")!
      .disabled).toBe(true);

    host.querySelector<HTMLElement>(`li[data-key="${DOC}#3"]`)!.click();
    await settle();
    expect(host.querySelector<HTMLButtonElement>(".goal-confirm")!
      .disabled).toBe(false);
    host.querySelector<HTMLElement>(".goal-confirm")!.click();
    await settle();
    expect(host.querySelector(`li[data-key="${DOC}#3"]`)!
      .classList.contains("confirmed")).toBe(true);

    // picking another cell moves the candidate, not the pinned goal
    host.querySelector<HTMLElement>(`li[data-key="${DOC}#1"]`)!.click();
    await settle();
    expect(server.goalConfirmed?.key.cell_id).toBe(3);
    expect(host.querySelector(`li[data-key="${DOC}#3"]`)!
      .classList.contains("confirmed")).toBe(true);
    expect(host.querySelector(`li[data-key="${DOC}#1"]`)!
      .classList.contains("candidate")).toBe(true);

    host.querySelector<HTMLElement>(".goal-confirm")!.click();
    await settle();
    expect(server.goalConfirmed?.key.cell_id).toBe(1);
  });
});

describe("language of the chrome", () => {
  it("redraws every label from the service catalog on switch", async () => {
    document.body.innerHTML = "";
    const { root, commander } = await mount();

    const en = fixture.catalog_en.entries;
    const de = fixture.catalog_de.entries;
    expect(root.querySelector('[data-action="goal"]')!.textContent)
      .toBe(en["ui.action.goal"]);

    await commander.switchLanguage("de");
    await settle();
    expect(root.querySelector('[data-action="goal"]')!.textContent)
      .toBe(de["ui.action.goal"]);
    expect(root.querySelector('[data-activity="prove"]')!.textContent)
      .toBe(de["ui.activity.prove"]);
    expect(root.querySelector(".keyboard-toggle")!.textContent)
      .toBe(de["ui.keyboard.show"]);
    expect(root.querySelector(".goal-confirm")!.textContent)
      .toBe(de["ui.goal.confirm"]);

    // nothing in the chrome still shows the English label
    for (const button of root.querySelectorAll("nav button")) {
      const text = button.textContent ?? "";
      expect(text).not.toBe("");
      const enOnly = Object.entries(en)
        .filter(([key, value]) => de[key] !== value)
        .map(([, value]) => value);
      expect(enOnly).not.toContain(text);
    }
  });
});
