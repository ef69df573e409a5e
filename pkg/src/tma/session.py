"""The working session: submitted formulas, declaration scoping,
knowledge archives, and the selection state used by prove and compute.

Submitting a formula cell parses its text, silently applies every
global declaration whose scope covers the cell, and stores the result
in the session under a stable key.  Nothing is printed back into the
document; the declarations change only the internal form.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .computation import BUILTIN_GROUPS, BUILTIN_MEMBERS
from .declarations import (
    DeclSequence, GlobalDeclaration, ImplicationDecl, LetDecl, QuantifierDecl,
    with_origin,
)
from .document import Cell, CellGroup, Document, DocumentError, FormatError, \
    VersionMismatch
from .formulas import (
    And, Binder, Forall, Formula, Implies, free_variables, from_jsonable,
    substitute, to_jsonable,
)
from .parser import parse_declaration, parse_formula
from .printer import format_formula


class SessionError(Exception):
    pass


class DocumentNotOpen(SessionError):
    pass


class NotAFormulaCell(SessionError):
    pass


class UnknownUnit(SessionError):
    pass


@dataclass(frozen=True)
class FormulaKey:
    """Identity of a submitted formula: document path plus cell serial."""
    doc_path: str
    cell_id: int

    def as_string(self) -> str:
        return f"{self.doc_path}#{self.cell_id}"


@dataclass
class FormulaEntry:
    key: FormulaKey
    label: str
    formula: Formula
    source_text: str = ""
    auto_label: bool = False


@dataclass
class Warning:
    code: str
    message: str


@dataclass
class Session:
    documents: dict[str, Document] = field(default_factory=dict)
    entries: dict[FormulaKey, FormulaEntry] = field(default_factory=dict)
    archives: dict[str, list[FormulaKey]] = field(default_factory=dict)
    # per-activity knowledge selection
    prove_selection: set[FormulaKey] = field(default_factory=set)
    compute_selection: set[FormulaKey] = field(default_factory=set)
    prove_builtins: set[str] = field(default_factory=set)
    compute_builtins: set[str] = field(default_factory=set)
    _decl_cache: dict = field(default_factory=dict, repr=False)

    # --- documents --------------------------------------------------------

    def open_document(self, doc: Document) -> None:
        self.documents[doc.path] = doc
        self._decl_cache.pop(doc.path, None)

    def document(self, path: str) -> Document:
        try:
            return self.documents[path]
        except KeyError:
            raise DocumentNotOpen(path) from None

    # --- declarations -----------------------------------------------------

    def declarations_at(self, doc_path: str,
                        cell_id: int) -> list[GlobalDeclaration]:
        """Declarations in scope at a cell, outermost first.

        A declaration covers everything from its own position to the end
        of its nearest enclosing group, so it applies to a cell exactly
        when that group also contains the cell and the declaration comes
        earlier in document order."""
        doc = self.document(doc_path)
        target_pos = doc.position(cell_id)
        target_chain = {g.id for g in doc.enclosing_groups(cell_id)}
        out = []
        for node, chain in doc.walk():
            if not isinstance(node, Cell) or node.kind != "declaration":
                continue
            if doc.position(node.id) >= target_pos:
                continue
            if chain[-1].id not in target_chain:
                continue
            out.append(self._parse_declaration(doc, node))
        return out

    def _parse_declaration(self, doc: Document,
                           cell: Cell) -> GlobalDeclaration:
        cache_key = (doc.path, cell.id, cell.text)
        hit = self._decl_cache.get(cache_key)
        if hit is None:
            try:
                hit = with_origin(parse_declaration(cell.text),
                                  (doc.path, cell.id))
            except Exception as exc:
                exc.origin = (doc.path, cell.id)
                raise
            self._decl_cache[cache_key] = hit
        return hit

    def all_declarations(self) -> list[GlobalDeclaration]:
        out = []
        for doc in self.documents.values():
            for node, _ in doc.walk():
                if isinstance(node, Cell) and node.kind == "declaration":
                    out.append(self._parse_declaration(doc, node))
        return out

    # --- submission -------------------------------------------------------

    def submit_cell(self, doc_path: str, cell_id: int
                    ) -> tuple[FormulaEntry, list[Warning]]:
        doc = self.document(doc_path)
        cell = doc.find_cell(cell_id)
        if cell.kind != "formula":
            raise NotAFormulaCell(f"cell {cell_id} is a {cell.kind} cell")
        parsed = parse_formula(cell.text)
        decls = self.declarations_at(doc_path, cell_id)
        elaborated = apply_declarations(parsed, decls)

        key = FormulaKey(doc.path, cell_id)
        existing = self.entries.get(key)
        if cell.user_label is not None:
            label, auto = cell.user_label, False
        elif existing is not None and existing.auto_label:
            label, auto = existing.label, True
        else:
            label, auto = str(doc.next_auto_label), True
            doc.next_auto_label += 1

        warnings = []
        for other in self.entries.values():
            if other.key != key and other.key.doc_path == doc.path \
                    and other.label == label:
                warnings.append(Warning(
                    "duplicate-label",
                    f"label {label!r} already used by cell "
                    f"{other.key.cell_id} in this document"))
        entry = FormulaEntry(key, label, elaborated, cell.text, auto)
        self.entries[key] = entry  # resubmission keeps its position
        cell.record = {"label": label,
                       "formula": format_formula(elaborated, style="ascii")}
        return entry, warnings

    def all_formulae(self) -> list[FormulaEntry]:
        return list(self.entries.values())

    def entry(self, key: FormulaKey) -> FormulaEntry:
        try:
            return self.entries[key]
        except KeyError:
            raise UnknownUnit(key.as_string()) from None

    # --- archives ---------------------------------------------------------

    def save_archive(self, keys: Iterable[FormulaKey], path: str) -> None:
        rows = []
        for key in keys:
            entry = self.entry(key)
            rows.append({"doc_path": entry.key.doc_path,
                         "cell_id": entry.key.cell_id,
                         "label": entry.label,
                         "ast": to_jsonable(entry.formula)})
        payload = {"version": 1, "entries": rows}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1, ensure_ascii=False)

    def load_archive(self, path: str) -> list[FormulaEntry]:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        if not isinstance(payload, dict) or "version" not in payload:
            raise FormatError("archive missing version")
        if payload["version"] != 1:
            raise VersionMismatch(f"archive version {payload['version']}")
        rows = payload.get("entries")
        if not isinstance(rows, list):
            raise FormatError("archive entries must be a list")
        loaded = []
        keys = []
        for row in rows:
            try:
                key = FormulaKey(row["doc_path"], int(row["cell_id"]))
                entry = FormulaEntry(key, str(row["label"]),
                                     from_jsonable(row["ast"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise FormatError(f"bad archive entry: {exc}") from None
            self.entries[key] = entry
            loaded.append(entry)
            keys.append(key)
        self.archives[os.path.abspath(path)] = keys
        return loaded

    # --- selections -------------------------------------------------------

    def _selection(self, context: str) -> set[FormulaKey]:
        if context == "prove":
            return self.prove_selection
        if context == "compute":
            return self.compute_selection
        raise UnknownUnit(f"unknown context {context!r}")

    def _builtin_selection(self, context: str) -> set[str]:
        if context == "prove":
            return self.prove_builtins
        if context == "compute":
            return self.compute_builtins
        raise UnknownUnit(f"unknown context {context!r}")

    def resolve_unit(self, unit) -> list[FormulaKey]:
        """A unit names one formula or a whole container of them."""
        match unit:
            case FormulaKey():
                self.entry(unit)
                return [unit]
            case {"kind": "formula", "doc_path": path, "cell_id": cid}:
                key = FormulaKey(path, int(cid))
                self.entry(key)
                return [key]
            case {"kind": "group", "doc_path": path, "group_id": gid}:
                doc = self.document(path)
                group = doc.find_group(int(gid))
                ids = {node.id for node, _ in _walk_group(group)}
                return [k for k in self.entries
                        if k.doc_path == path and k.cell_id in ids]
            case {"kind": "document", "doc_path": path}:
                self.document(path)
                return [k for k in self.entries if k.doc_path == path]
            case {"kind": "archive", "path": path}:
                try:
                    return list(self.archives[os.path.abspath(path)])
                except KeyError:
                    raise UnknownUnit(path) from None
        raise UnknownUnit(repr(unit))

    def set_selection(self, context: str, unit, selected: bool) -> None:
        target = self._selection(context)
        keys = self.resolve_unit(unit)
        if selected:
            target.update(keys)
        else:
            target.difference_update(keys)

    def selection_state(self, context: str, unit) -> str:
        """Tri-state over the unit's member formulas: all, none, partial."""
        target = self._selection(context)
        keys = self.resolve_unit(unit)
        if not keys:
            return "none"
        inside = sum(1 for k in keys if k in target)
        if inside == 0:
            return "none"
        if inside == len(keys):
            return "all"
        return "partial"

    def selected_entries(self, context: str) -> list[FormulaEntry]:
        target = self._selection(context)
        return [e for k, e in self.entries.items() if k in target]

    def set_builtin_selection(self, context: str, unit_id: str,
                              selected: bool) -> None:
        target = self._builtin_selection(context)
        if unit_id in BUILTIN_GROUPS:
            members = BUILTIN_GROUPS[unit_id]
        elif unit_id in BUILTIN_MEMBERS:
            members = (unit_id,)
        else:
            raise UnknownUnit(unit_id)
        if selected:
            target.update(members)
        else:
            target.difference_update(members)

    def builtin_selection_state(self, context: str, unit_id: str) -> str:
        target = self._builtin_selection(context)
        if unit_id in BUILTIN_GROUPS:
            members = BUILTIN_GROUPS[unit_id]
        elif unit_id in BUILTIN_MEMBERS:
            members = (unit_id,)
        else:
            raise UnknownUnit(unit_id)
        inside = sum(1 for m in members if m in target)
        if inside == 0:
            return "none"
        if inside == len(members):
            return "all"
        return "partial"


def _walk_group(group: CellGroup):
    for child in group.children:
        if isinstance(child, CellGroup):
            yield child, None
            yield from _walk_group(child)
        else:
            yield child, None


# --- elaboration ----------------------------------------------------------

def apply_declarations(formula: Formula,
                       decls: list[GlobalDeclaration]) -> Formula:
    """Wrap a parsed formula with the declarations in scope.

    Declarations arrive outermost first; they are applied innermost
    first so the outermost declaration ends up outermost in the result.
    """
    out = formula
    for decl in reversed(decls):
        out = _apply_one(out, decl)
    return out


def _apply_one(formula: Formula, decl: GlobalDeclaration) -> Formula:
    match decl:
        case DeclSequence(items):
            out = formula
            for item in reversed(items):
                out = _apply_one(out, item)
            return out
        case LetDecl(name, replacement):
            return substitute(formula, {name: replacement})
        case ImplicationDecl(lhs):
            return Implies(lhs, formula)
        case QuantifierDecl(binder):
            free = free_variables(formula)
            kept_set = {v for v in binder.variables if v in free}
            if not kept_set:
                return formula
            condition = binder.condition
            if condition is not None:
                # the condition must not leak variables we would drop
                cond_free = free_variables(condition)
                kept_set |= {v for v in binder.variables if v in cond_free}
            kept = tuple(v for v in binder.variables if v in kept_set)
            bounds = binder.bounds if kept == binder.variables else None
            return Forall(Binder(kept, condition, bounds), formula)
    raise SessionError(f"unknown declaration {decl!r}")
