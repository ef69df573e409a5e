// Inspect action: a live proof tree fed by the event stream, next to
// the rendered proof text. Clicking a tree node scrolls the text to
// its first block; clicking a block marks its node with a small black
// triangle. The legend maps node kinds to shapes and statuses to
// colors, all through CSS classes so the markup stays testable.

import { Api, ProofEventJson, ProofTextJson, TreeJson, TreeNodeJson } from "./api.js";
import { I18n } from "./i18n.js";

interface LiveNode {
  id: number;
  type: TreeNodeJson["type"];
  status: TreeNodeJson["status"];
  rule_id: string | null;
  parent_id: number | null;
  children: number[];
  explain: boolean;
  depth: number;
  payload: Record<string, unknown>;
}

const NODE_SHAPES = ["situation", "and", "or", "terminal"] as const;
const NODE_STATUSES = ["pending", "proved", "failed", "pruned"] as const;

function shapeFor(type: string): string {
  // The initial proof situation is drawn like any other situation node.
  if (type === "initial") return "situation";
  return NODE_SHAPES.includes(type as never) ? type : "situation";
}

export class InspectView {
  nodes = new Map<number, LiveNode>();
  rootId: number | null = null;
  finished = false;
  reason: string | null = null;
  text: ProofTextJson | null = null;
  markedNode: number | null = null;
  lastScrolledBlock: string | null = null;
  writtenBackCell: number | null = null;

  private proofId: string | null = null;
  private container: HTMLElement | null = null;

  constructor(private api: Api, private i18n: I18n) {}

  reset(): void {
    this.nodes.clear();
    this.rootId = null;
    this.finished = false;
    this.reason = null;
    this.text = null;
    this.markedNode = null;
    this.lastScrolledBlock = null;
    this.writtenBackCell = null;
    this.proofId = null;
  }

  ingest(event: ProofEventJson): void {
    if (event.kind === "node-added") {
      const node: LiveNode = {
        id: event.node_id,
        type: event.node_type ?? "situation",
        status: event.status ?? "pending",
        rule_id: event.rule_id ?? null,
        parent_id: event.parent_id ?? null,
        children: [],
        explain: event.explain ?? false,
        depth: event.depth ?? 0,
        payload: event.payload ?? {},
      };
      this.nodes.set(node.id, node);
      if (node.parent_id === null) {
        this.rootId = node.id;
      } else {
        this.nodes.get(node.parent_id)?.children.push(node.id);
      }
    } else if (event.kind === "status-changed") {
      const node = this.nodes.get(event.node_id);
      if (node) node.status = event.status ?? node.status;
    } else if (event.kind === "finished") {
      this.finished = true;
      this.reason = event.reason ?? null;
    }
  }

  async follow(proofId: string): Promise<void> {
    this.reset();
    this.proofId = proofId;
    await this.api.streamEvents(proofId, (event) => {
      this.ingest(event);
      this.rerender();
    });
    this.text = await this.api.proofText(proofId);
    this.rerender();
  }

  async writeBack(): Promise<void> {
    const proofId = this.proofId;
    if (proofId === null) return;
    const snap = (await this.api.proofSnapshot(proofId)).snapshot;
    if (snap.goal_key === null) return;
    const res = await this.api.writeBack(proofId, snap.goal_key[0], snap.goal_key[1]);
    this.writtenBackCell = res.cell_id;
    this.rerender();
  }

  toTreeJson(): TreeJson {
    const nodes: Record<string, TreeNodeJson> = {};
    for (const [id, node] of this.nodes) {
      nodes[String(id)] = {
        id: node.id,
        type: node.type,
        status: node.status,
        rule_id: node.rule_id,
        parent_id: node.parent_id,
        children: [...node.children],
        explain: node.explain,
        depth: node.depth,
        payload: node.payload,
      };
    }
    const root = this.rootId ?? 0;
    const rootNode = this.nodes.get(root);
    return {
      root,
      reason: this.reason,
      success: rootNode?.status === "proved",
      nodes,
    };
  }

  scrollToNode(nodeId: number): void {
    const blocks = this.text?.navigation.node_to_blocks[String(nodeId)] ?? [];
    if (blocks.length === 0) return;
    const blockId = blocks[0];
    this.lastScrolledBlock = blockId;
    const host = this.container;
    if (!host) return;
    for (const el of host.querySelectorAll(".proof-block.highlight")) {
      el.classList.remove("highlight");
    }
    const el = host.querySelector<HTMLElement>(
      `.proof-block[data-block="${blockId}"]`);
    if (el) {
      el.classList.add("highlight");
      if (typeof el.scrollIntoView === "function") {
        el.scrollIntoView({ block: "nearest" });
      }
    }
  }

  markFromBlock(blockId: string): void {
    const nodeId = this.text?.navigation.block_to_node[blockId];
    if (nodeId === undefined) return;
    this.markedNode = nodeId;
    const host = this.container;
    if (!host) return;
    for (const el of host.querySelectorAll(".tree-node.marked")) {
      el.classList.remove("marked");
      el.querySelector(".node-mark")?.remove();
    }
    const el = host.querySelector<HTMLElement>(
      `.tree-node[data-node="${nodeId}"]`);
    if (el) {
      el.classList.add("marked");
      const mark = document.createElement("span");
      mark.className = "node-mark";
      mark.textContent = "▸";
      el.insertBefore(mark, el.firstChild);
    }
  }

  render(container: HTMLElement): void {
    this.container = container;
    this.rerender();
  }

  private rerender(): void {
    const host = this.container;
    if (!host) return;
    host.innerHTML = "";
    host.className = "inspect-view";
    host.title = this.i18n.t("ui.tip.inspect");

    host.appendChild(this.renderLegend());

    const panes = document.createElement("div");
    panes.className = "inspect-panes";

    const treePane = document.createElement("div");
    treePane.className = "tree-pane";
    if (this.rootId !== null) {
      treePane.appendChild(this.renderNode(this.rootId));
    }
    panes.appendChild(treePane);

    const textPane = document.createElement("div");
    textPane.className = "text-pane";
    if (this.text) {
      for (const block of this.text.blocks) {
        const p = document.createElement("p");
        p.className = "proof-block";
        p.dataset.block = block.block_id;
        p.dataset.node = String(block.node_id);
        p.textContent = block.text;
        p.addEventListener("click", () => this.markFromBlock(block.block_id));
        textPane.appendChild(p);
      }
    }
    panes.appendChild(textPane);
    host.appendChild(panes);

    if (this.finished && this.proofId !== null) {
      const button = document.createElement("button");
      button.type = "button";
      button.className = "write-back";
      button.textContent = this.i18n.t("ui.write-back");
      button.disabled = this.writtenBackCell !== null;
      button.addEventListener("click", () => void this.writeBack());
      host.appendChild(button);
    }
  }

  private renderLegend(): HTMLElement {
    const legend = document.createElement("div");
    legend.className = "tree-legend";
    for (const shape of NODE_SHAPES) {
      const item = document.createElement("span");
      item.className = `legend-item shape-${shape}`;
      item.textContent = this.i18n.t(`ui.legend.${shape}`);
      legend.appendChild(item);
    }
    for (const status of NODE_STATUSES) {
      const item = document.createElement("span");
      item.className = `legend-item st-${status}`;
      item.textContent = this.i18n.t(`ui.status.${status}`);
      legend.appendChild(item);
    }
    return legend;
  }

  private renderNode(id: number): HTMLElement {
    const node = this.nodes.get(id)!;
    const item = document.createElement("div");
    item.className = "tree-item";

    const head = document.createElement("span");
    head.className = `tree-node shape-${shapeFor(node.type)} st-${node.status}`;
    head.dataset.node = String(node.id);
    head.textContent = node.rule_id ?? String(node.id);
    const tip = node.payload["formula"] ?? node.payload["goal"];
    if (typeof tip === "string") head.title = tip;
    if (node.id === this.markedNode) {
      head.classList.add("marked");
      const mark = document.createElement("span");
      mark.className = "node-mark";
      mark.textContent = "▸";
      head.insertBefore(mark, head.firstChild);
    }
    head.addEventListener("click", () => this.scrollToNode(node.id));
    item.appendChild(head);

    if (node.children.length > 0) {
      const children = document.createElement("div");
      children.className = "tree-children";
      for (const child of node.children) {
        children.appendChild(this.renderNode(child));
      }
      item.appendChild(children);
    }
    return item;
  }
}
