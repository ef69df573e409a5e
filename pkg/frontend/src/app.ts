// The Commander shell: activity tabs down the left edge, action tabs
// across the top, and one panel at a time underneath. Every visible
// label comes from the service catalog; switching the language reloads
// the catalog and redraws the chrome.

import { Api, StrategyJson } from "./api.js";
import { I18n } from "./i18n.js";
import { ACTIONS, ACTIVITIES, CommanderState } from "./state.js";
import { GoalPanel } from "./goal.js";
import { BuiltinBrowser, KnowledgeBrowser, RuleBrowser } from "./browsers.js";
import { SubmitPanel } from "./submitPanel.js";
import { InspectView } from "./inspect.js";
import { Editable, VirtualKeyboard } from "./keyboard.js";

function editableFrom(el: HTMLTextAreaElement | HTMLInputElement): Editable {
  return {
    get value() { return el.value; },
    set value(v: string) { el.value = v; },
    get selectionStart() { return el.selectionStart ?? el.value.length; },
    set selectionStart(v: number) { el.selectionStart = v; },
    get selectionEnd() { return el.selectionEnd ?? el.value.length; },
    set selectionEnd(v: number) { el.selectionEnd = v; },
    focus() { el.focus(); },
  };
}

export class Commander {
  readonly goal: GoalPanel;
  readonly ruleBrowser: RuleBrowser;
  readonly submitPanel: SubmitPanel;
  readonly inspectView: InspectView;
  readonly keyboard: VirtualKeyboard;

  private proveKnowledge: KnowledgeBrowser;
  private proveBuiltins: BuiltinBrowser;
  private computeKnowledge: KnowledgeBrowser;
  private computeBuiltins: BuiltinBrowser;

  private root: HTMLElement | null = null;
  private keyboardShown = false;
  private followedProof: string | null = null;
  private strategy: StrategyJson | null = null;
  private computeOutput: string | null = null;

  constructor(private api: Api, private i18n: I18n,
              readonly state: CommanderState) {
    this.goal = new GoalPanel(api, i18n, state);
    this.proveKnowledge = new KnowledgeBrowser(api, i18n, "prove", state);
    this.proveBuiltins = new BuiltinBrowser(api, i18n, "prove");
    this.computeKnowledge = new KnowledgeBrowser(api, i18n, "compute", state);
    this.computeBuiltins = new BuiltinBrowser(api, i18n, "compute");
    this.ruleBrowser = new RuleBrowser(api, i18n);
    this.submitPanel = new SubmitPanel(api, i18n, state);
    this.inspectView = new InspectView(api, i18n);
    this.keyboard = new VirtualKeyboard();
    state.subscribe(() => this.redraw());
  }

  render(root: HTMLElement): void {
    this.root = root;
    this.redraw();
  }

  private redraw(): void {
    const root = this.root;
    if (!root) return;
    root.innerHTML = "";
    root.className = "commander";

    const activityNav = document.createElement("nav");
    activityNav.className = "activity-tabs";
    for (const activity of ACTIVITIES) {
      const tab = document.createElement("button");
      tab.type = "button";
      tab.dataset.activity = activity;
      tab.textContent = this.i18n.t(`ui.activity.${activity}`);
      if (activity === this.state.activity) tab.classList.add("active");
      tab.addEventListener("click", () => this.state.setActivity(activity));
      activityNav.appendChild(tab);
    }
    root.appendChild(activityNav);

    const main = document.createElement("div");
    main.className = "commander-main";

    const actionNav = document.createElement("nav");
    actionNav.className = "action-tabs";
    for (const action of ACTIONS[this.state.activity]) {
      const tab = document.createElement("button");
      tab.type = "button";
      tab.dataset.action = action;
      tab.textContent = this.i18n.t(`ui.action.${action}`);
      if (action === this.state.action) tab.classList.add("active");
      tab.addEventListener("click", () => this.state.setAction(action));
      actionNav.appendChild(tab);
    }
    main.appendChild(actionNav);

    const host = document.createElement("div");
    host.className = "panel-host";
    host.addEventListener("focusin", (event) => {
      const target = event.target;
      if (target instanceof HTMLTextAreaElement ||
          (target instanceof HTMLInputElement && target.type === "text")) {
        this.keyboard.attach(editableFrom(target));
      }
    });
    main.appendChild(host);

    const bar = document.createElement("div");
    bar.className = "keyboard-bar";
    const toggle = document.createElement("button");
    toggle.type = "button";
    toggle.className = "keyboard-toggle";
    toggle.textContent = this.i18n.t("ui.keyboard.show");
    toggle.addEventListener("click", () => {
      this.keyboardShown = !this.keyboardShown;
      this.redraw();
    });
    bar.appendChild(toggle);
    if (this.keyboardShown) {
      const kbHost = document.createElement("div");
      kbHost.className = "keyboard-host";
      this.keyboard.render(kbHost);
      bar.appendChild(kbHost);
    }
    main.appendChild(bar);

    root.appendChild(main);
    this.showPanel(host);
  }

  private showPanel(host: HTMLElement): void {
    const key = `${this.state.activity}/${this.state.action}`;
    switch (key) {
      case "session/formulae":
        void this.renderFormulae(host);
        break;
      case "session/declarations":
        void this.renderDeclarations(host);
        break;
      case "session/archive":
        this.renderArchive(host);
        break;
      case "prove/goal":
        this.goal.render(host);
        void this.goal.refresh();
        break;
      case "prove/knowledge":
        this.proveKnowledge.render(host);
        void this.proveKnowledge.refresh();
        break;
      case "prove/builtin":
        this.proveBuiltins.render(host);
        void this.proveBuiltins.refresh();
        break;
      case "prove/prover":
        void this.renderProver(host);
        break;
      case "prove/submit":
        this.submitPanel.render(host);
        void this.submitPanel.refresh();
        break;
      case "prove/inspect":
        this.renderInspect(host);
        break;
      case "compute/expression":
        this.renderCompute(host);
        break;
      case "compute/knowledge":
        this.computeKnowledge.render(host);
        void this.computeKnowledge.refresh();
        break;
      case "compute/builtin":
        this.computeBuiltins.render(host);
        void this.computeBuiltins.refresh();
        break;
      case "preferences/language":
        void this.renderLanguage(host);
        break;
    }
  }

  private async renderFormulae(host: HTMLElement): Promise<void> {
    const res = await this.api.sessionFormulae();
    host.innerHTML = "";
    host.classList.add("formulae-panel");
    const list = document.createElement("ul");
    for (const entry of res.entries) {
      const row = document.createElement("li");
      row.dataset.key = entry.key.key;
      row.textContent = `(${entry.label}) ${entry.formula}`;
      row.title = entry.source_text;
      row.addEventListener("click", () => this.state.setCursor({
        docPath: entry.key.doc_path, cellId: entry.key.cell_id }));
      list.appendChild(row);
    }
    host.appendChild(list);
  }

  private async renderDeclarations(host: HTMLElement): Promise<void> {
    host.innerHTML = "";
    host.classList.add("declarations-panel");
    const list = document.createElement("ul");
    const cursor = this.state.cursor;
    if (cursor !== null) {
      const res = await this.api.declarationsAt(cursor.docPath, cursor.cellId);
      for (const decl of res.declarations) {
        const row = document.createElement("li");
        row.textContent = decl.text;
        row.title = decl.ascii;
        list.appendChild(row);
      }
    }
    host.appendChild(list);
  }

  private renderArchive(host: HTMLElement): void {
    host.innerHTML = "";
    host.classList.add("archive-panel");

    const path = document.createElement("input");
    path.type = "text";
    path.className = "archive-path";
    host.appendChild(path);

    const result = document.createElement("p");
    result.className = "archive-result";

    const save = document.createElement("button");
    save.type = "button";
    save.className = "archive-save";
    save.textContent = this.i18n.t("ui.archive.save");
    save.addEventListener("click", () => {
      void this.api.archiveSave(path.value).then((res) => {
        result.textContent = `${res.saved}: ${res.count}`;
      });
    });
    host.appendChild(save);

    const load = document.createElement("button");
    load.type = "button";
    load.className = "archive-load";
    load.textContent = this.i18n.t("ui.archive.load");
    load.addEventListener("click", () => {
      void this.api.archiveLoad(path.value).then((res) => {
        result.textContent = `${path.value}: ${res.entries.length}`;
      });
    });
    host.appendChild(load);

    host.appendChild(result);
  }

  private async renderProver(host: HTMLElement): Promise<void> {
    host.innerHTML = "";
    host.classList.add("prover-panel");

    const rulesHost = document.createElement("div");
    host.appendChild(rulesHost);
    this.ruleBrowser.render(rulesHost);
    await this.ruleBrowser.refresh();

    this.strategy = await this.api.getStrategy();
    const strat = this.strategy;

    const box = document.createElement("div");
    box.className = "strategy-box";
    const head = document.createElement("h3");
    head.textContent = this.i18n.t("ui.strategy");
    box.appendChild(head);

    const select = document.createElement("select");
    select.className = "strategy-select";
    for (const sid of strat.strategies) {
      const option = document.createElement("option");
      option.value = sid;
      option.textContent = sid;
      if (sid === strat.strategy_id) option.selected = true;
      select.appendChild(option);
    }
    select.addEventListener("change", () => {
      void this.api.putStrategy({ strategy_id: select.value })
        .then((res) => { this.strategy = res; });
    });
    box.appendChild(select);

    const numeric = (name: "alternatives" | "max_depth" | "max_nodes" | "timeout",
                     value: number) => {
      const input = document.createElement("input");
      input.type = "number";
      input.className = `strategy-${name.replace("_", "-")}`;
      input.title = name;
      input.value = String(value);
      input.addEventListener("change", () => {
        void this.api.putStrategy({ [name]: Number(input.value) })
          .then((res) => { this.strategy = res; });
      });
      box.appendChild(input);
    };
    numeric("alternatives", strat.alternatives);
    numeric("max_depth", strat.limits.max_depth);
    numeric("max_nodes", strat.limits.max_nodes);
    numeric("timeout", strat.limits.timeout);

    host.appendChild(box);
  }

  private renderInspect(host: HTMLElement): void {
    this.inspectView.render(host);
    const proofId = this.state.currentProofId;
    if (proofId !== null && proofId !== this.followedProof) {
      this.followedProof = proofId;
      void this.inspectView.follow(proofId);
    }
  }

  private renderCompute(host: HTMLElement): void {
    host.innerHTML = "";
    host.classList.add("compute-panel");

    const input = document.createElement("textarea");
    input.className = "compute-input";
    host.appendChild(input);
    this.keyboard.attach(editableFrom(input));

    const output = document.createElement("pre");
    output.className = "compute-result";
    if (this.computeOutput !== null) output.textContent = this.computeOutput;

    const run = document.createElement("button");
    run.type = "button";
    run.className = "compute-run";
    run.textContent = this.i18n.t("ui.compute.run");
    run.addEventListener("click", () => {
      void this.api.compute(input.value).then((res) => {
        this.computeOutput = res.step_limit_exceeded
          ? `${res.result} …`
          : res.result;
        output.textContent = this.computeOutput;
      });
    });
    host.appendChild(run);
    host.appendChild(output);
  }

  private async renderLanguage(host: HTMLElement): Promise<void> {
    const [langs, current] = await Promise.all([
      this.api.languages(),
      this.api.getLanguage(),
    ]);
    host.innerHTML = "";
    host.classList.add("language-panel");

    const select = document.createElement("select");
    select.className = "language-select";
    for (const lang of langs.languages) {
      const option = document.createElement("option");
      option.value = lang;
      option.textContent = lang;
      if (lang === current.language) option.selected = true;
      select.appendChild(option);
    }
    select.addEventListener("change", () => void this.switchLanguage(select.value));
    host.appendChild(select);
  }

  async switchLanguage(lang: string): Promise<void> {
    await this.api.putLanguage(lang);
    await this.i18n.load(this.api, lang);
    this.redraw();
  }
}
