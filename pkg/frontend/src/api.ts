// Typed client for the workbench service. Everything the Commander
// knows about the backend goes through this file; no other module
// builds a URL or touches fetch.

export interface FormulaKeyJson {
  doc_path: string;
  cell_id: number;
  key: string;
}

export interface EntryJson {
  key: FormulaKeyJson;
  label: string;
  formula: string;
  ascii: string;
  source_text: string;
  selected: boolean;
}

export interface CellJson {
  id: number;
  kind: "formula" | "declaration" | "text" | "proof_result";
  text: string;
  label?: string;
  record?: Record<string, unknown>;
}

export interface GroupJson {
  id: number;
  group: "section" | "environment";
  title?: string;
  env_kind?: string;
  children: DocNodeJson[];
}

export type DocNodeJson = CellJson | GroupJson;

export function isGroup(node: DocNodeJson): node is GroupJson {
  return "group" in node;
}

export interface DocumentJson {
  version: number;
  next_serial: number;
  next_auto_label: number;
  cells: DocNodeJson[];
}

export interface RuleJson {
  rule_id: string;
  group_path: string[];
  active: boolean;
  priority: number;
  explain: boolean;
  description_key: string;
}

export interface BuiltinMemberJson {
  name: string;
  selected: boolean;
}

export interface BuiltinGroupJson {
  group: string;
  state: "all" | "partial" | "none";
  members: BuiltinMemberJson[];
}

export interface StrategyJson {
  strategy_id: string;
  strategies: string[];
  alternatives: number;
  limits: { max_depth: number; max_nodes: number; timeout: number };
}

export interface SnapshotRuleStateJson {
  rule_id: string;
  active: boolean;
  priority: number;
  explain: boolean;
}

export interface SnapshotJson {
  goal_key: [string, number] | null;
  knowledge: [string, number][];
  builtins: string[];
  rule_states: SnapshotRuleStateJson[];
  strategy_id: string;
  alternatives: number;
  limits: { max_depth: number; max_nodes: number; timeout: number };
  language: string;
}

export interface TreeNodeJson {
  id: number;
  type: "initial" | "situation" | "and" | "or" | "terminal";
  status: "pending" | "proved" | "failed" | "pruned";
  rule_id: string | null;
  parent_id: number | null;
  children: number[];
  explain: boolean;
  depth: number;
  payload: Record<string, unknown>;
}

export interface TreeJson {
  root: number;
  reason: string | null;
  success: boolean;
  nodes: Record<string, TreeNodeJson>;
}

export interface ProofEventJson {
  kind: "node-added" | "status-changed" | "finished";
  node_id: number;
  seq: number;
  node_type?: TreeNodeJson["type"];
  status?: TreeNodeJson["status"];
  rule_id?: string;
  parent_id?: number;
  payload?: Record<string, unknown>;
  explain?: boolean;
  depth?: number;
  reason?: string | null;
}

export interface TextBlockJson {
  block_id: string;
  node_id: number;
  text: string;
  formula_label_refs: { label: string; key: string }[];
}

export interface ProofTextJson {
  language: string;
  blocks: TextBlockJson[];
  navigation: {
    node_to_blocks: Record<string, string[]>;
    block_to_node: Record<string, number>;
  };
}

export interface KnowledgeUnit {
  kind: "formula" | "group" | "document" | "archive";
  doc_path?: string;
  cell_id?: number;
  group_id?: number;
  path?: string;
}

export type Activity = "prove" | "compute";

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class Api {
  constructor(
    private base: string = "/api/v1",
    private fetchFn: FetchLike = (u, i) => fetch(u, i),
  ) {}

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchFn(this.base + path, init);
    if (!res.ok) {
      let detail = res.statusText;
      try {
        const data = await res.json();
        detail = typeof data.detail === "string" ? data.detail : JSON.stringify(data.detail);
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(res.status, detail);
    }
    return (await res.json()) as T;
  }

  // documents
  listDocuments() {
    return this.call<{ documents: string[] }>("GET", "/documents");
  }
  newDocument(path: string) {
    return this.call<{ path: string; document: DocumentJson }>("POST", "/documents/new", { path });
  }
  openDocument(path: string) {
    return this.call<{ path: string; document: DocumentJson }>("POST", "/documents/open", { path });
  }
  getDocument(path: string) {
    return this.call<{ path: string; document: DocumentJson }>(
      "GET", `/documents/document?path=${encodeURIComponent(path)}`);
  }
  insertCell(path: string, kind: CellJson["kind"], text: string, groupId?: number) {
    return this.call<{ cell_id: number }>("POST", "/documents/insert-cell",
      { path, kind, text, group_id: groupId ?? null });
  }
  editCell(path: string, cellId: number, text: string) {
    return this.call<{ cell_id: number }>("POST", "/documents/edit-cell",
      { path, cell_id: cellId, text });
  }
  submitCell(path: string, cellId: number) {
    return this.call<{ entry: EntryJson; warnings: { code: string; message: string }[] }>(
      "POST", "/documents/submit-cell", { path, cell_id: cellId });
  }
  declarationsAt(path: string, cellId: number) {
    return this.call<{ declarations: { text: string; ascii: string; origin: string[] | null }[] }>(
      "GET", `/documents/declarations-at?path=${encodeURIComponent(path)}&cell_id=${cellId}`);
  }

  // session
  sessionFormulae() {
    return this.call<{ entries: EntryJson[] }>("GET", "/session/formulae");
  }
  archiveSave(path: string) {
    return this.call<{ saved: string; count: number }>("POST", "/session/archive/save", { path });
  }
  archiveLoad(path: string) {
    return this.call<{ entries: EntryJson[] }>("POST", "/session/archive/load", { path });
  }

  // goal
  getGoal() {
    return this.call<{ candidate: FormulaKeyJson | null; confirmed: FormulaKeyJson | null }>(
      "GET", "/prove/goal");
  }
  putCandidate(path: string, cellId: number) {
    return this.call<{ candidate: FormulaKeyJson; confirmed: FormulaKeyJson | null }>(
      "PUT", "/prove/goal/candidate", { path, cell_id: cellId });
  }
  confirmGoal() {
    return this.call<{ candidate: FormulaKeyJson; confirmed: FormulaKeyJson }>(
      "POST", "/prove/goal/confirm");
  }

  // selections
  getKnowledge(activity: Activity) {
    return this.call<{ entries: EntryJson[] }>("GET", `/${activity}/knowledge`);
  }
  putKnowledge(activity: Activity, unit: KnowledgeUnit, selected: boolean) {
    return this.call<{ state: "all" | "partial" | "none" }>(
      "PUT", `/${activity}/knowledge`, { unit, selected });
  }
  getBuiltins(activity: Activity) {
    return this.call<{ groups: BuiltinGroupJson[] }>("GET", `/${activity}/builtins`);
  }
  putBuiltin(activity: Activity, unit: string, selected: boolean) {
    return this.call<{ state: "all" | "partial" | "none" }>(
      "PUT", `/${activity}/builtins`, { unit, selected });
  }

  // prover configuration
  getRules() {
    return this.call<{ rules: RuleJson[] }>("GET", "/prove/rules");
  }
  putRule(ruleId: string, patch: { active?: boolean; priority?: number; explain?: boolean }) {
    return this.call<{ rules: RuleJson[] }>("PUT", "/prove/rules", { rule_id: ruleId, ...patch });
  }
  getStrategy() {
    return this.call<StrategyJson>("GET", "/prove/strategy");
  }
  putStrategy(patch: { strategy_id?: string; alternatives?: number; max_depth?: number;
                       max_nodes?: number; timeout?: number }) {
    return this.call<StrategyJson>("PUT", "/prove/strategy", patch);
  }

  // proving
  snapshotPreview() {
    return this.call<{ snapshot: SnapshotJson }>("GET", "/prove/snapshot-preview");
  }
  submitProof() {
    return this.call<{ proof_id: string }>("POST", "/prove/submit");
  }
  proofTree(proofId: string) {
    return this.call<{ done: boolean; tree: TreeJson | null }>("GET", `/proofs/${proofId}/tree`);
  }
  proofText(proofId: string, lang?: string) {
    const q = lang ? `?lang=${encodeURIComponent(lang)}` : "";
    return this.call<ProofTextJson>("GET", `/proofs/${proofId}/text${q}`);
  }
  proofSnapshot(proofId: string) {
    return this.call<{ snapshot: SnapshotJson }>("GET", `/proofs/${proofId}/snapshot`);
  }
  restoreSettings(proofId: string) {
    return this.call<{ snapshot: SnapshotJson }>("POST", `/proofs/${proofId}/restore-settings`);
  }
  writeBack(proofId: string, path: string, cellId: number) {
    return this.call<{ cell_id: number }>("POST", `/proofs/${proofId}/write-back`,
      { path, cell_id: cellId });
  }

  /** Follow the proof event stream; resolves when the stream closes. */
  async streamEvents(proofId: string, onEvent: (e: ProofEventJson) => void,
                     start = 0): Promise<void> {
    const res = await this.fetchFn(`${this.base}/proofs/${proofId}/events?start=${start}`,
      { method: "GET" });
    if (!res.ok) throw new ApiError(res.status, res.statusText);
    const deliver = (text: string) => {
      for (const line of text.split("\n")) {
        if (line.startsWith("data: ")) onEvent(JSON.parse(line.slice(6)));
      }
    };
    const body = res.body;
    if (!body) {
      deliver(await res.text());
      return;
    }
    const reader = body.getReader();
    const decoder = new TextDecoder();
    let buffer = "";
    for (;;) {
      const { done, value } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });
      // SSE frames end with a blank line
      const cut = buffer.lastIndexOf("\n\n");
      if (cut >= 0) {
        deliver(buffer.slice(0, cut + 1));
        buffer = buffer.slice(cut + 2);
      }
    }
    deliver(buffer);
  }

  // compute
  compute(expr: string, stepLimit?: number) {
    return this.call<{ result: string; ascii: string; steps: number;
                       step_limit_exceeded: boolean; trace: unknown[] }>(
      "POST", "/compute", { expr, step_limit: stepLimit ?? 200 });
  }

  // preferences
  languages() {
    return this.call<{ languages: string[] }>("GET", "/preferences/languages");
  }
  getLanguage() {
    return this.call<{ language: string }>("GET", "/preferences/language");
  }
  putLanguage(language: string) {
    return this.call<{ language: string }>("PUT", "/preferences/language", { language });
  }
  catalog(lang?: string) {
    const q = lang ? `?lang=${encodeURIComponent(lang)}` : "";
    return this.call<{ language: string; entries: Record<string, string> }>(
      "GET", `/preferences/catalog${q}`);
  }
}
