"""Natural-language rendering of proof trees.

A finished proof tree becomes an ordered list of text blocks, each tied
to the node it narrates.  The tie is kept in both directions so a front
end can scroll the text when a tree node is selected and highlight the
node when a block is clicked.  Rule nodes whose explain flag is off are
skipped; their children are still rendered, which fuses the surrounding
steps into one stretch of text.
"""

from __future__ import annotations

import html
import os
from dataclasses import dataclass, field
from typing import Optional

from .document import Document, Cell
from .i18n import Translator, fill
from .prover import ProofNode, ProofTree, SettingsSnapshot, \
    snapshot_to_jsonable

# payload keys whose values name knowledge-base formulas
_LABEL_KEYS = ("assumption", "other", "implication", "definition")


class PresenterError(Exception):
    pass


class UnknownId(PresenterError):
    """No block or node with the requested id."""


@dataclass(frozen=True)
class TextBlock:
    block_id: str
    node_id: int
    text: str
    formula_label_refs: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class NavigationMap:
    node_to_blocks: dict[int, tuple[str, ...]]
    block_to_node: dict[str, int]

    def blocks_for_node(self, node_id: int) -> tuple[str, ...]:
        try:
            return self.node_to_blocks[node_id]
        except KeyError:
            raise UnknownId(node_id) from None

    def node_for_block(self, block_id: str) -> int:
        try:
            return self.block_to_node[block_id]
        except KeyError:
            raise UnknownId(block_id) from None


@dataclass(frozen=True)
class ProofDocument:
    blocks: tuple[TextBlock, ...]
    navigation: NavigationMap
    language: str


def _ref_string(value) -> str:
    as_string = getattr(value, "as_string", None)
    if callable(as_string):
        return as_string()
    return str(value)


class _Renderer:
    def __init__(self, tree: ProofTree, translator: Translator,
                 template_dir: Optional[str],
                 labels: Optional[dict]):
        self.tree = tree
        self.t = translator
        self.template_dir = template_dir
        self.labels = labels or {}
        self.blocks: list[TextBlock] = []
        self.node_to_blocks: dict[int, list[str]] = {}

    # --- block plumbing ---------------------------------------------------

    def emit(self, node_id: int, text: str,
             labels: tuple[str, ...] = ()) -> None:
        refs = tuple((label, _ref_string(self.labels[label]))
                     for label in labels if label in self.labels)
        block = TextBlock(f"b{len(self.blocks)}", node_id, text, refs)
        self.blocks.append(block)
        self.node_to_blocks.setdefault(node_id, []).append(block.block_id)

    def template(self, key: str, slots: dict) -> Optional[str]:
        """Wording override from disk: <dir>/<tag>/<key>.txt, falling
        back to the rule's base file when a variant file is absent."""
        if self.template_dir is None:
            return None
        candidates = [key]
        if key.startswith("rule.") and key.count(".") == 2:
            candidates.append(key.rsplit(".", 1)[0])
        for name in candidates:
            path = os.path.join(self.template_dir, self.t.language,
                                name + ".txt")
            if os.path.isfile(path):
                with open(path, encoding="utf-8") as handle:
                    return fill(handle.read().rstrip("\n"), **slots)
        return None

    def phrase(self, key: str, **slots) -> str:
        override = self.template(key, slots)
        if override is not None:
            return override
        return self.t.format(key, **slots)

    # --- node dispatch ----------------------------------------------------

    def render(self) -> None:
        self.initial(self.tree.root)
        for child in self.tree.root.children:
            self.node(self.tree.nodes[child])
        self.summary()

    def node(self, n: ProofNode) -> None:
        if n.node_type == "situation":
            self.situation(n)
        elif n.node_type == "or":
            self.emit(n.id, self.phrase("proof.alternatives",
                                        count=len(n.children)))
        else:  # and | terminal
            if n.explain:
                self.rule(n)
        for child in n.children:
            self.node(self.tree.nodes[child])

    def initial(self, root: ProofNode) -> None:
        goal = root.payload["goal"]["text"]
        self.emit(root.id, self.phrase("proof.prove-intro", goal=goal))
        assumptions = root.payload.get("assumptions", [])
        if assumptions:
            self.emit(root.id, self.phrase("proof.under-assumptions"))
            for item in assumptions:
                self.emit(root.id,
                          self.phrase("proof.assumption-item",
                                      label=item["label"],
                                      formula=item["text"]),
                          labels=(item["label"],))

    def situation(self, n: ProofNode) -> None:
        goal = n.payload["goal"]["text"]
        parent = self.tree.nodes[n.parent_id]
        if parent.node_type == "and" and len(parent.children) >= 2:
            index = parent.children.index(n.id) + 1
            text = self.phrase("proof.case", index=index,
                               total=len(parent.children), goal=goal)
        else:
            text = self.phrase("proof.situation", goal=goal)
        self.emit(n.id, text)

    def rule(self, n: ProofNode) -> None:
        key = f"rule.{n.rule_id}"
        if "variant" in n.payload:
            key = f"{key}.{n.payload['variant']}"
        slots = {k: v for k, v in n.payload.items() if k != "variant"}
        labels = tuple(n.payload[k] for k in _LABEL_KEYS
                       if k in n.payload)
        self.emit(n.id, self.phrase(key, **slots), labels=labels)

    def summary(self) -> None:
        root = self.tree.root
        if self.tree.success:
            self.emit(root.id, self.phrase("proof.success"))
        elif self.tree.reason == "limit":
            self.emit(root.id, self.phrase("proof.failure-limit"))
        elif self.tree.reason == "cancelled":
            self.emit(root.id, self.phrase("proof.failure-cancelled"))
        else:
            goal = self._deepest_failure()
            self.emit(root.id, self.phrase("proof.failure", goal=goal))

    def _deepest_failure(self) -> str:
        best = None
        for n in self.tree.nodes.values():
            if n.node_type not in ("initial", "situation"):
                continue
            if n.status != "failed":
                continue
            if best is None or (n.depth, n.id) > (best.depth, best.id):
                best = n
        if best is None:
            best = self.tree.root
        return best.payload["goal"]["text"]


def render_proof(tree: ProofTree, language: str = "en",
                 lang_dir: Optional[str] = None,
                 template_dir: Optional[str] = None,
                 labels: Optional[dict] = None) -> ProofDocument:
    """Render a proof tree into navigable text blocks.

    labels: optional map from formula label to the key of the formula
    in the session, recorded on blocks that mention that label."""
    translator = Translator(language, lang_dir)
    renderer = _Renderer(tree, translator, template_dir, labels)
    renderer.render()
    navigation = NavigationMap(
        {node_id: tuple(ids)
         for node_id, ids in renderer.node_to_blocks.items()},
        {b.block_id: b.node_id for b in renderer.blocks})
    return ProofDocument(tuple(renderer.blocks), navigation,
                         translator.language)


# --- exports ---------------------------------------------------------------

def render_text(doc: ProofDocument) -> str:
    return "\n".join(block.text for block in doc.blocks) + "\n"


def blocks_to_json(doc: ProofDocument) -> dict:
    """The wire shape shared by the service and the CLI's json mode."""
    return {
        "language": doc.language,
        "blocks": [
            {"block_id": b.block_id, "node_id": b.node_id, "text": b.text,
             "formula_label_refs": [
                 {"label": label, "key": key}
                 for label, key in b.formula_label_refs]}
            for b in doc.blocks],
        "navigation": {
            "node_to_blocks": {
                str(node): list(blocks)
                for node, blocks in doc.navigation.node_to_blocks.items()},
            "block_to_node": dict(doc.navigation.block_to_node),
        },
    }


def render_html(doc: ProofDocument) -> str:
    parts = [f'<div class="proof" lang="{html.escape(doc.language)}">']
    for block in doc.blocks:
        refs = ""
        if block.formula_label_refs:
            keys = ",".join(key for _, key in block.formula_label_refs)
            refs = f' data-labels="{html.escape(keys)}"'
        parts.append(
            f'  <p id="{block.block_id}" data-node="{block.node_id}"'
            f'{refs}>{html.escape(block.text)}</p>')
    parts.append("</div>")
    return "\n".join(parts) + "\n"


# --- writing results into documents ----------------------------------------

@dataclass(frozen=True)
class ProofResultRecord:
    proof_id: str
    success: bool
    snapshot: SettingsSnapshot
    timestamp: str
    summary: str


def record_to_jsonable(record: ProofResultRecord,
                       goal_cell_id: int) -> dict:
    return {
        "goal_cell_id": goal_cell_id,
        "proof_id": record.proof_id,
        "success": record.success,
        "snapshot": snapshot_to_jsonable(record.snapshot),
        "timestamp": record.timestamp,
        "summary": record.summary,
    }


def write_back(doc: Document, goal_cell_id: int,
               record: ProofResultRecord) -> Cell:
    """Store a proof outcome next to its goal cell.

    An existing result cell for the same goal is updated in place;
    otherwise a new proof_result cell is inserted directly after the
    goal cell.  Returns the result cell."""
    payload = record_to_jsonable(record, goal_cell_id)
    for cell in doc.cells():
        if cell.kind == "proof_result" and cell.record \
                and cell.record.get("goal_cell_id") == goal_cell_id:
            cell.record = payload
            cell.text = record.summary
            return cell
    chain = doc.enclosing_groups(goal_cell_id)
    group = chain[-1]
    slot = next(i for i, child in enumerate(group.children)
                if child.id == goal_cell_id) + 1
    result_id = doc.insert_cell(group.id, slot, "proof_result",
                                text=record.summary)
    result = doc.find_cell(result_id)
    result.record = payload
    return result
