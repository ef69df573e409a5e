// Selection browsers: knowledge, built-ins and inference rules.
//
// Each browser renders a checkbox tree. Group boxes show the tri-state
// derived from their leaves; toggling a group applies the new value to
// every leaf below it through a single service call where the wire
// supports it (knowledge groups, whole documents) or one call per leaf
// (built-in groups, rule groups).

import {
  Api,
  Activity,
  CellJson,
  DocumentJson,
  EntryJson,
  GroupJson,
  KnowledgeUnit,
  RuleJson,
  isGroup,
} from "./api.js";
import { I18n } from "./i18n.js";
import {
  BrowserTreeNode,
  applyToCheckbox,
  collectLeaves,
  deriveState,
  toggleTarget,
} from "./tristate.js";
import { CommanderState } from "./state.js";

interface KnowledgeLeaf {
  unit: KnowledgeUnit;
  key: string;
}

export class KnowledgeBrowser {
  roots: BrowserTreeNode<KnowledgeLeaf>[] = [];
  private selected = new Map<string, boolean>();
  private entryByKey = new Map<string, EntryJson>();
  private container: HTMLElement | null = null;

  constructor(private api: Api, private i18n: I18n,
              private activity: Activity,
              private state: CommanderState) {}

  async refresh(): Promise<void> {
    const [docs, knowledge] = await Promise.all([
      this.api.listDocuments(),
      this.api.getKnowledge(this.activity),
    ]);
    this.selected.clear();
    this.entryByKey.clear();
    const byDoc = new Map<string, EntryJson[]>();
    for (const entry of knowledge.entries) {
      this.selected.set(entry.key.key, entry.selected);
      this.entryByKey.set(entry.key.key, entry);
      const bucket = byDoc.get(entry.key.doc_path) ?? [];
      bucket.push(entry);
      byDoc.set(entry.key.doc_path, bucket);
    }

    this.roots = [];
    const open = new Set(docs.documents);
    for (const [path, entries] of byDoc) {
      if (open.has(path)) {
        const res = await this.api.getDocument(path);
        this.roots.push(this.documentNode(path, res.document, entries));
      } else {
        this.roots.push(this.flatNode(path, entries));
      }
    }
    this.rerender();
  }

  private leafNode(entry: EntryJson): BrowserTreeNode<KnowledgeLeaf> {
    return {
      unit: {
        unit: {
          kind: "formula",
          doc_path: entry.key.doc_path,
          cell_id: entry.key.cell_id,
        },
        key: entry.key.key,
      },
      label: `(${entry.label})`,
      tooltip: entry.formula,
      children: [],
    };
  }

  private documentNode(path: string, doc: DocumentJson,
                       entries: EntryJson[]): BrowserTreeNode<KnowledgeLeaf> {
    const byCell = new Map<number, EntryJson>();
    for (const entry of entries) byCell.set(entry.key.cell_id, entry);

    const walk = (nodes: Array<CellJson | GroupJson>):
        BrowserTreeNode<KnowledgeLeaf>[] => {
      const out: BrowserTreeNode<KnowledgeLeaf>[] = [];
      for (const node of nodes) {
        if (isGroup(node)) {
          const children = walk(node.children);
          if (children.length === 0) continue;
          out.push({
            unit: {
              unit: { kind: "group", doc_path: path, group_id: node.id },
              key: `group:${path}:${node.id}`,
            },
            label: node.title ?? node.env_kind ?? node.group,
            children,
          });
        } else {
          const entry = byCell.get(node.id);
          if (entry !== undefined) out.push(this.leafNode(entry));
        }
      }
      return out;
    };

    return {
      unit: {
        unit: { kind: "document", doc_path: path },
        key: `document:${path}`,
      },
      label: path,
      children: walk(doc.cells),
    };
  }

  private flatNode(path: string,
                   entries: EntryJson[]): BrowserTreeNode<KnowledgeLeaf> {
    return {
      unit: {
        unit: { kind: "document", doc_path: path },
        key: `document:${path}`,
      },
      label: path,
      children: entries.map((e) => this.leafNode(e)),
    };
  }

  isSelected = (leaf: KnowledgeLeaf): boolean =>
    this.selected.get(leaf.key) ?? false;

  async toggle(node: BrowserTreeNode<KnowledgeLeaf>): Promise<void> {
    const target = toggleTarget(deriveState(node, this.isSelected));
    await this.api.putKnowledge(this.activity, node.unit.unit, target);
    for (const leaf of collectLeaves(node)) {
      this.selected.set(leaf.key, target);
    }
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
    host.className = "browser knowledge-browser";
    host.title = this.i18n.t("ui.tip.knowledge");
    host.appendChild(renderTree(this.roots, this.isSelected, {
      onToggle: (node) => void this.toggle(node),
      onLabel: (node) => {
        const unit = node.unit.unit;
        if (unit.kind === "formula" &&
            unit.doc_path !== undefined && unit.cell_id !== undefined) {
          this.state.setCursor({ docPath: unit.doc_path, cellId: unit.cell_id });
        }
      },
    }));
  }
}

export class BuiltinBrowser {
  roots: BrowserTreeNode<string>[] = [];
  private selected = new Map<string, boolean>();
  private container: HTMLElement | null = null;

  constructor(private api: Api, private i18n: I18n,
              private activity: Activity) {}

  async refresh(): Promise<void> {
    const res = await this.api.getBuiltins(this.activity);
    this.selected.clear();
    this.roots = res.groups.map((group) => ({
      unit: `group:${group.group}`,
      label: group.group,
      children: group.members.map((member) => {
        this.selected.set(member.name, member.selected);
        return { unit: member.name, label: member.name, children: [] };
      }),
    }));
    this.rerender();
  }

  isSelected = (name: string): boolean => this.selected.get(name) ?? false;

  async toggle(node: BrowserTreeNode<string>): Promise<void> {
    const target = toggleTarget(deriveState(node, this.isSelected));
    for (const name of collectLeaves(node)) {
      await this.api.putBuiltin(this.activity, name, target);
      this.selected.set(name, target);
    }
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
    host.className = "browser builtin-browser";
    host.title = this.i18n.t("ui.tip.builtin");
    host.appendChild(renderTree(this.roots, this.isSelected, {
      onToggle: (node) => void this.toggle(node),
    }));
  }
}

const PRIORITY_CHOICES = [1, 2, 3, 5, 10, 20, 30, 40, 50, 75, 100];

export class RuleBrowser {
  rules: RuleJson[] = [];
  roots: BrowserTreeNode<string>[] = [];
  private container: HTMLElement | null = null;

  constructor(private api: Api, private i18n: I18n) {}

  async refresh(): Promise<void> {
    this.accept(await this.api.getRules());
  }

  private accept(res: { rules: RuleJson[] }): void {
    this.rules = res.rules;
    const groups = new Map<string, BrowserTreeNode<string>[]>();
    const order: string[] = [];
    for (const rule of this.rules) {
      const group = rule.group_path.join("/");
      if (!groups.has(group)) {
        groups.set(group, []);
        order.push(group);
      }
      groups.get(group)!.push({
        unit: rule.rule_id,
        label: rule.rule_id,
        tooltip: this.i18n.t(rule.description_key),
        children: [],
      });
    }
    this.roots = order.map((group) => ({
      unit: `group:${group}`,
      label: group,
      children: groups.get(group)!,
    }));
    this.rerender();
  }

  private ruleFor(id: string): RuleJson | undefined {
    return this.rules.find((r) => r.rule_id === id);
  }

  isActive = (id: string): boolean => this.ruleFor(id)?.active ?? false;

  async setActive(id: string, active: boolean): Promise<void> {
    this.accept(await this.api.putRule(id, { active }));
  }

  async setExplain(id: string, explain: boolean): Promise<void> {
    this.accept(await this.api.putRule(id, { explain }));
  }

  async setPriority(id: string, priority: number): Promise<void> {
    this.accept(await this.api.putRule(id, { priority }));
  }

  async toggleGroup(node: BrowserTreeNode<string>): Promise<void> {
    const target = toggleTarget(deriveState(node, this.isActive));
    for (const id of collectLeaves(node)) {
      await this.api.putRule(id, { active: target });
    }
    await this.refresh();
  }

  render(container: HTMLElement): void {
    this.container = container;
    this.rerender();
  }

  private rerender(): void {
    const host = this.container;
    if (!host) return;
    host.innerHTML = "";
    host.className = "browser rule-browser";
    host.title = this.i18n.t("ui.tip.prover");

    const list = document.createElement("ul");
    list.className = "tree";
    for (const group of this.roots) {
      const item = document.createElement("li");
      item.dataset.unit = group.unit;

      const box = document.createElement("input");
      box.type = "checkbox";
      applyToCheckbox(box, deriveState(group, this.isActive));
      box.addEventListener("change", () => void this.toggleGroup(group));
      item.appendChild(box);

      const label = document.createElement("span");
      label.className = "tree-label";
      label.textContent = group.label;
      item.appendChild(label);

      const members = document.createElement("ul");
      for (const leaf of group.children) {
        members.appendChild(this.ruleRow(leaf));
      }
      item.appendChild(members);
      list.appendChild(item);
    }
    host.appendChild(list);
  }

  private ruleRow(leaf: BrowserTreeNode<string>): HTMLElement {
    const rule = this.ruleFor(leaf.unit)!;
    const row = document.createElement("li");
    row.className = "rule-row";
    row.dataset.unit = rule.rule_id;

    const active = document.createElement("input");
    active.type = "checkbox";
    active.className = "rule-active";
    active.checked = rule.active;
    active.addEventListener("change", () =>
      void this.setActive(rule.rule_id, active.checked));
    row.appendChild(active);

    const label = document.createElement("span");
    label.className = "tree-label";
    label.textContent = rule.rule_id;
    if (leaf.tooltip) label.title = leaf.tooltip;
    row.appendChild(label);

    const explain = document.createElement("input");
    explain.type = "checkbox";
    explain.className = "rule-explain";
    explain.checked = rule.explain;
    explain.title = this.i18n.t("ui.rule.explain");
    explain.addEventListener("change", () =>
      void this.setExplain(rule.rule_id, explain.checked));
    row.appendChild(explain);

    const priority = document.createElement("select");
    priority.className = "rule-priority";
    priority.title = this.i18n.t("ui.rule.priority");
    const choices = PRIORITY_CHOICES.includes(rule.priority)
      ? PRIORITY_CHOICES
      : [...PRIORITY_CHOICES, rule.priority].sort((a, b) => a - b);
    for (const value of choices) {
      const option = document.createElement("option");
      option.value = String(value);
      option.textContent = String(value);
      if (value === rule.priority) option.selected = true;
      priority.appendChild(option);
    }
    priority.addEventListener("change", () =>
      void this.setPriority(rule.rule_id, Number(priority.value)));
    row.appendChild(priority);

    return row;
  }
}

interface TreeHandlers<U> {
  onToggle: (node: BrowserTreeNode<U>) => void;
  onLabel?: (node: BrowserTreeNode<U>) => void;
}

function renderTree<U>(nodes: BrowserTreeNode<U>[],
                       isSelected: (unit: U) => boolean,
                       handlers: TreeHandlers<U>): HTMLElement {
  const list = document.createElement("ul");
  list.className = "tree";
  for (const node of nodes) {
    const item = document.createElement("li");
    item.dataset.unit = typeof node.unit === "string"
      ? node.unit
      : (node.unit as { key?: string }).key ?? node.label;

    const box = document.createElement("input");
    box.type = "checkbox";
    applyToCheckbox(box, deriveState(node, isSelected));
    box.addEventListener("change", () => handlers.onToggle(node));
    item.appendChild(box);

    const label = document.createElement("span");
    label.className = "tree-label";
    label.textContent = node.label;
    if (node.tooltip) label.title = node.tooltip;
    if (handlers.onLabel) {
      label.addEventListener("click", () => handlers.onLabel!(node));
    }
    item.appendChild(label);

    if (node.children.length > 0) {
      item.appendChild(renderTree(node.children, isSelected, handlers));
    }
    list.appendChild(item);
  }
  return list;
}
