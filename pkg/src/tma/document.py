"""Structured documents: nested cell groups with formula, declaration,
text, and proof-result cells.

Cells and groups carry integer serials unique within the document and
never reused; the file stores the next serial so identity survives
editing sessions.  Stored as versioned JSON.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

FORMAT_VERSION = 1


class DocumentError(Exception):
    pass


class FormatError(DocumentError):
    pass


class VersionMismatch(FormatError):
    def __init__(self, found):
        super().__init__(f"unsupported document version {found!r}")
        self.found = found


class DuplicateCellId(FormatError):
    def __init__(self, cell_id: int):
        super().__init__(f"cell id {cell_id} appears twice")
        self.cell_id = cell_id


class UnknownCellId(DocumentError):
    def __init__(self, cell_id: int):
        super().__init__(f"no cell with id {cell_id}")
        self.cell_id = cell_id


class UnknownGroup(DocumentError):
    def __init__(self, group_id: int):
        super().__init__(f"no group with id {group_id}")
        self.group_id = group_id


@dataclass
class Cell:
    id: int
    kind: str  # formula | declaration | text | proof_result
    text: str = ""
    user_label: Optional[str] = None
    record: Optional[dict] = None  # proof_result payload


@dataclass
class CellGroup:
    id: int
    kind: str  # root | section | environment
    title: str = ""
    env_kind: str = ""  # Definition, Lemma, Theorem, ... for environments
    children: list[Union["CellGroup", Cell]] = field(default_factory=list)


@dataclass
class Document:
    path: str
    root: CellGroup
    next_serial: int
    next_auto_label: int = 1

    # --- structure queries ------------------------------------------------

    def walk(self) -> Iterator[tuple[Union[CellGroup, Cell], list[CellGroup]]]:
        """Pre-order traversal yielding (node, enclosing group chain
        outermost-first)."""

        def rec(group: CellGroup, chain: list[CellGroup]):
            yield group, chain
            inner = chain + [group]
            for child in group.children:
                if isinstance(child, CellGroup):
                    yield from rec(child, inner)
                else:
                    yield child, inner

        yield from rec(self.root, [])

    def cells(self) -> Iterator[Cell]:
        for node, _ in self.walk():
            if isinstance(node, Cell):
                yield node

    def find_cell(self, cell_id: int) -> Cell:
        for cell in self.cells():
            if cell.id == cell_id:
                return cell
        raise UnknownCellId(cell_id)

    def find_group(self, group_id: int) -> CellGroup:
        for node, _ in self.walk():
            if isinstance(node, CellGroup) and node.id == group_id:
                return node
        raise UnknownGroup(group_id)

    def enclosing_groups(self, cell_id: int) -> list[CellGroup]:
        """Group chain around a cell, outermost (the root) first."""
        for node, chain in self.walk():
            if isinstance(node, Cell) and node.id == cell_id:
                return chain
        raise UnknownCellId(cell_id)

    def position(self, node_id: int) -> int:
        """Document-order index of a cell or group."""
        for i, (node, _) in enumerate(self.walk()):
            if node.id == node_id:
                return i
        raise UnknownCellId(node_id)

    # --- editing ----------------------------------------------------------

    def take_serial(self) -> int:
        serial = self.next_serial
        self.next_serial += 1
        return serial

    def insert_cell(self, parent_group_id: int, position: Optional[int],
                    kind: str, text: str = "",
                    user_label: Optional[str] = None) -> int:
        """Insert at ``position`` among the group's children, or append
        when position is None."""
        group = self.find_group(parent_group_id)
        if kind not in ("formula", "declaration", "text", "proof_result"):
            raise DocumentError(f"unknown cell kind {kind!r}")
        cell = Cell(self.take_serial(), kind, text, user_label)
        group.children.insert(self._slot(group, position), cell)
        return cell.id

    def insert_group(self, parent_group_id: int, position: Optional[int],
                     kind: str, title: str = "", env_kind: str = "") -> int:
        parent = self.find_group(parent_group_id)
        if kind not in ("section", "environment"):
            raise DocumentError(f"unknown group kind {kind!r}")
        group = CellGroup(self.take_serial(), kind, title, env_kind)
        parent.children.insert(self._slot(parent, position), group)
        return group.id

    @staticmethod
    def _slot(group: CellGroup, position: Optional[int]) -> int:
        if position is None:
            return len(group.children)
        return max(0, min(position, len(group.children)))


def new_document(path: str) -> Document:
    return Document(path=os.path.abspath(path),
                    root=CellGroup(0, "root"), next_serial=1)


# --- serialization --------------------------------------------------------

def _node_to_json(node: Union[CellGroup, Cell]) -> dict:
    if isinstance(node, CellGroup):
        out: dict = {"id": node.id, "group": node.kind,
                     "children": [_node_to_json(c) for c in node.children]}
        if node.title:
            out["title"] = node.title
        if node.env_kind:
            out["env_kind"] = node.env_kind
        return out
    out = {"id": node.id, "kind": node.kind, "text": node.text}
    if node.user_label is not None:
        out["label"] = node.user_label
    if node.record is not None:
        out["record"] = node.record
    return out


def _node_from_json(data) -> Union[CellGroup, Cell]:
    if not isinstance(data, dict) or not isinstance(data.get("id"), int):
        raise FormatError(f"bad node: {data!r}")
    if "group" in data:
        kind = data["group"]
        if kind not in ("section", "environment"):
            raise FormatError(f"unknown group kind {kind!r}")
        children = data.get("children", [])
        if not isinstance(children, list):
            raise FormatError("children must be a list")
        return CellGroup(data["id"], kind, data.get("title", ""),
                         data.get("env_kind", ""),
                         [_node_from_json(c) for c in children])
    kind = data.get("kind")
    if kind not in ("formula", "declaration", "text", "proof_result"):
        raise FormatError(f"unknown cell kind {kind!r}")
    return Cell(data["id"], kind, data.get("text", ""), data.get("label"),
                data.get("record"))


def document_to_json(doc: Document) -> dict:
    return {"version": FORMAT_VERSION,
            "next_serial": doc.next_serial,
            "next_auto_label": doc.next_auto_label,
            "cells": [_node_to_json(c) for c in doc.root.children]}


def document_from_json(data, path: str) -> Document:
    if not isinstance(data, dict):
        raise FormatError("document must be a JSON object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise VersionMismatch(version)
    cells = data.get("cells")
    if not isinstance(cells, list):
        raise FormatError("missing cells")
    root = CellGroup(0, "root",
                     children=[_node_from_json(c) for c in cells])
    doc = Document(path=os.path.abspath(path), root=root,
                   next_serial=1, next_auto_label=1)
    seen: set[int] = set()
    max_serial = 0
    for node, _ in doc.walk():
        if node.id in seen:
            raise DuplicateCellId(node.id)
        seen.add(node.id)
        max_serial = max(max_serial, node.id)
    stored = data.get("next_serial", 0)
    if not isinstance(stored, int):
        raise FormatError("next_serial must be an integer")
    doc.next_serial = max(stored, max_serial + 1)
    label = data.get("next_auto_label", 1)
    if not isinstance(label, int) or label < 1:
        raise FormatError("next_auto_label must be a positive integer")
    doc.next_auto_label = label
    return doc


def load_document(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return document_from_json(data, path)


def save_document(doc: Document, path: Optional[str] = None) -> None:
    target = os.path.abspath(path or doc.path)
    doc.path = target
    with open(target, "w", encoding="utf-8") as fh:
        json.dump(document_to_json(doc), fh, ensure_ascii=False, indent=1)
        fh.write("\n")
