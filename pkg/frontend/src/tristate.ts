// Tri-state checkbox trees. The selection itself lives on the server;
// this module only answers two questions: what state does a node show,
// and what does clicking it mean. Parent state is always derived from
// the leaves, never stored.

export type CheckState = "checked" | "unchecked" | "partial";

export interface BrowserTreeNode<U> {
  /** what this row stands for: a leaf unit or a group of them */
  unit: U;
  label: string;
  tooltip?: string;
  children: BrowserTreeNode<U>[];
}

export function isLeaf<U>(node: BrowserTreeNode<U>): boolean {
  return node.children.length === 0;
}

export function collectLeaves<U>(node: BrowserTreeNode<U>): U[] {
  if (isLeaf(node)) return [node.unit];
  return node.children.flatMap(collectLeaves);
}

/** Derived display state: all / none / mixed over the node's leaves. */
export function deriveState<U>(
  node: BrowserTreeNode<U>,
  isSelected: (leaf: U) => boolean,
): CheckState {
  const leaves = collectLeaves(node);
  if (leaves.length === 0) return "unchecked";
  const picked = leaves.filter((leaf) => isSelected(leaf)).length;
  if (picked === 0) return "unchecked";
  if (picked === leaves.length) return "checked";
  return "partial";
}

/**
 * What a click on the node's checkbox requests: partial and unchecked
 * both turn everything on, checked turns everything off. Group clicks
 * propagate down; the resulting leaf changes propagate back up purely
 * through deriveState.
 */
export function toggleTarget(current: CheckState): boolean {
  return current !== "checked";
}

export function mapState(wire: "all" | "partial" | "none"): CheckState {
  switch (wire) {
    case "all": return "checked";
    case "none": return "unchecked";
    case "partial": return "partial";
  }
}

/** Apply a checkbox to a DOM input, using indeterminate for partial. */
export function applyToCheckbox(box: HTMLInputElement, state: CheckState): void {
  box.checked = state === "checked";
  box.indeterminate = state === "partial";
}
