// Commander shell state: which activity is open, which action inside
// it, where the cursor sits, which proof is being inspected.

export const ACTIVITIES = ["session", "prove", "compute", "preferences"] as const;
export type ActivityId = (typeof ACTIVITIES)[number];

// action order is the wizard order: moving left to right completes
// the activity, so Prove must read goal .. inspect
export const ACTIONS: Record<ActivityId, readonly string[]> = {
  session: ["formulae", "declarations", "archive"],
  prove: ["goal", "knowledge", "builtin", "prover", "submit", "inspect"],
  compute: ["expression", "knowledge", "builtin"],
  preferences: ["language"],
};

export interface CursorPosition {
  docPath: string;
  cellId: number;
}

export type StateListener = (state: CommanderState) => void;

export class CommanderState {
  activity: ActivityId = "prove";
  private actionByActivity = new Map<ActivityId, string>();
  cursor: CursorPosition | null = null;
  currentProofId: string | null = null;
  private listeners: StateListener[] = [];

  constructor() {
    for (const a of ACTIVITIES) this.actionByActivity.set(a, ACTIONS[a][0]);
  }

  get action(): string {
    return this.actionByActivity.get(this.activity)!;
  }

  subscribe(fn: StateListener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private notify(): void {
    for (const fn of [...this.listeners]) fn(this);
  }

  setActivity(activity: ActivityId): void {
    this.activity = activity;
    this.notify();
  }

  setAction(action: string): void {
    if (!ACTIONS[this.activity].includes(action)) {
      throw new Error(`no action ${action} in ${this.activity}`);
    }
    this.actionByActivity.set(this.activity, action);
    this.notify();
  }

  /** Step the wizard one action to the right; stops at the last one. */
  advance(): void {
    const order = ACTIONS[this.activity];
    const i = order.indexOf(this.action);
    if (i + 1 < order.length) this.setAction(order[i + 1]);
  }

  setCursor(cursor: CursorPosition | null): void {
    this.cursor = cursor;
    this.notify();
  }

  setProof(proofId: string): void {
    this.currentProofId = proofId;
    this.notify();
  }
}
