"""HTTP service over one workspace.

Exposes documents, the formula session, the prove and compute
workflows, live proof-event streaming, and language preferences under
/api/v1.  One server instance carries one workspace; request handlers
may run concurrently, so every touch of shared state happens under the
workspace lock.  Proof jobs run on worker threads and buffer their
events, which any number of clients can replay or follow.
"""

from __future__ import annotations

import dataclasses
import datetime
import itertools
import json
import os
import threading
from typing import Iterator, Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import StreamingResponse
from pydantic import BaseModel

from .computation import (
    BUILTIN_GROUPS, StepLimitExceeded, compute, expand_builtin_selection,
)
from .document import (
    Document, DocumentError, FormatError, load_document, new_document,
    document_to_json, save_document,
)
from .i18n import (Translator, available_languages, english_catalog,
                   load_catalog)
from .lexer import LexError
from .parser import ParseError, parse_formula
from .presenter import (
    ProofResultRecord, blocks_to_json, render_proof, write_back,
)
from .printer import format_declaration, format_formula
from .prover import (
    Limits, ProverConfig, RULES, STRATEGIES, InvalidSnapshot,
    SettingsSnapshot, default_config, prove, replay, restore_settings,
    snapshot_config, snapshot_from_jsonable, snapshot_to_jsonable,
    tree_to_jsonable,
)
from .session import (
    FormulaKey, NotAFormulaCell, Session, SessionError, UnknownUnit,
)

API = "/api/v1"


# --- request bodies --------------------------------------------------------

class PathBody(BaseModel):
    path: str


class SaveBody(BaseModel):
    path: str
    to: Optional[str] = None


class CellRef(BaseModel):
    path: str
    cell_id: int


class EditCellBody(CellRef):
    text: str


class InsertCellBody(BaseModel):
    path: str
    group_id: Optional[int] = None
    position: Optional[int] = None
    kind: str = "formula"
    text: str = ""
    label: Optional[str] = None


class InsertGroupBody(BaseModel):
    path: str
    group_id: Optional[int] = None
    position: Optional[int] = None
    kind: str = "section"
    title: str = ""
    env_kind: str = ""


class SelectionBody(BaseModel):
    unit: dict
    selected: bool


class BuiltinBody(BaseModel):
    unit: str
    selected: bool


class RuleStateBody(BaseModel):
    rule_id: str
    active: Optional[bool] = None
    priority: Optional[int] = None
    explain: Optional[bool] = None


class StrategyBody(BaseModel):
    strategy_id: Optional[str] = None
    alternatives: Optional[int] = None
    max_depth: Optional[int] = None
    max_nodes: Optional[int] = None
    timeout: Optional[float] = None


class ComputeBody(BaseModel):
    expr: str
    use_compute_selections: bool = True
    step_limit: int = 200


class SnapshotBody(BaseModel):
    snapshot: dict


class LanguageBody(BaseModel):
    language: str


class ArchiveBody(BaseModel):
    path: str
    keys: Optional[list[dict]] = None


# --- proof jobs ------------------------------------------------------------

class ProofJob:
    """One background proof run with a replayable event buffer."""

    def __init__(self, proof_id: str, snapshot: SettingsSnapshot):
        self.proof_id = proof_id
        self.snapshot = snapshot
        self.events: list[dict] = []
        self.tree = None
        self.done = False
        self.error: Optional[str] = None
        self.cond = threading.Condition()

    def sink(self, event: dict) -> None:
        with self.cond:
            self.events.append(dict(event))
            self.cond.notify_all()

    def finish(self, tree, error: Optional[str] = None) -> None:
        with self.cond:
            self.tree = tree
            self.error = error
            self.done = True
            self.cond.notify_all()

    def snapshot_events(self) -> tuple[list[dict], bool]:
        with self.cond:
            return list(self.events), self.done

    def current_tree(self):
        """The finished tree, or a replay of what has streamed so far."""
        with self.cond:
            if self.done and self.tree is not None:
                return self.tree
            events = list(self.events)
        return replay(events)


class Workspace:
    """Everything one server instance owns."""

    def __init__(self, session: Optional[Session] = None,
                 lang_dir: Optional[str] = None,
                 template_dir: Optional[str] = None):
        self.session = session or Session()
        self.lang_dir = lang_dir
        self.template_dir = template_dir
        self.language = "en"
        self.config: ProverConfig = default_config()
        self.candidate: Optional[FormulaKey] = None
        self.confirmed: Optional[FormulaKey] = None
        self.jobs: dict[str, ProofJob] = {}
        self.lock = threading.RLock()
        self._ids = itertools.count(1)
        # a fresh workspace starts with every built-in switched on
        everything = expand_builtin_selection(set(BUILTIN_GROUPS))
        if not self.session.prove_builtins:
            self.session.prove_builtins.update(everything)
        if not self.session.compute_builtins:
            self.session.compute_builtins.update(everything)

    def take_proof_id(self) -> str:
        return f"proof-{next(self._ids)}"

    # label -> key map for the presenter
    def label_resolver(self) -> dict[str, FormulaKey]:
        return {e.label: e.key for e in self.session.entries.values()}


def _key_json(key: Optional[FormulaKey]):
    if key is None:
        return None
    return {"doc_path": key.doc_path, "cell_id": key.cell_id,
            "key": key.as_string()}


def _entry_json(entry, selected: bool) -> dict:
    return {
        "key": _key_json(entry.key),
        "label": entry.label,
        "formula": format_formula(entry.formula),
        "ascii": format_formula(entry.formula, style="ascii"),
        "source_text": entry.source_text,
        "selected": selected,
    }


def _rule_json(config: ProverConfig) -> list[dict]:
    out = []
    for spec in RULES:
        state = config.rule_states[spec.id]
        out.append({
            "rule_id": spec.id,
            "group_path": list(spec.group_path),
            "active": state.active,
            "priority": state.priority,
            "explain": state.explain,
            "description_key": spec.description_key,
        })
    return out


def _strategy_json(config: ProverConfig) -> dict:
    return {
        "strategy_id": config.strategy_id,
        "strategies": sorted(STRATEGIES),
        "alternatives": config.alternatives,
        "limits": {
            "max_depth": config.limits.max_depth,
            "max_nodes": config.limits.max_nodes,
            "timeout": config.limits.timeout,
        },
    }


def _document_json(doc: Document) -> dict:
    return {"path": doc.path, "document": document_to_json(doc)}


def _parse_detail(exc) -> dict:
    detail = {"message": exc.message, "span": list(exc.span)}
    origin = getattr(exc, "origin", None)
    if origin:
        detail["origin"] = list(origin)
    return detail


def create_app(session: Optional[Session] = None,
               lang_dir: Optional[str] = None,
               template_dir: Optional[str] = None) -> FastAPI:
    if lang_dir is None:
        lang_dir = os.environ.get("TMA_LANG_DIR") or None
    app = FastAPI(title="workbench", docs_url=None, redoc_url=None)
    ws = Workspace(session, lang_dir, template_dir)
    app.state.workspace = ws

    def doc_or_404(path: str) -> Document:
        with ws.lock:
            doc = ws.session.documents.get(os.path.abspath(path)) \
                or ws.session.documents.get(path)
        if doc is None:
            raise HTTPException(404, f"document not open: {path}")
        return doc

    def job_or_404(proof_id: str) -> ProofJob:
        with ws.lock:
            job = ws.jobs.get(proof_id)
        if job is None:
            raise HTTPException(404, f"unknown proof {proof_id!r}")
        return job

    # --- documents --------------------------------------------------------

    @app.get(API + "/documents")
    def list_documents():
        with ws.lock:
            return {"documents": [
                {"path": d.path,
                 "cells": sum(1 for _ in d.cells())}
                for d in ws.session.documents.values()]}

    @app.post(API + "/documents/new")
    def new_doc(body: PathBody):
        with ws.lock:
            doc = new_document(body.path)
            ws.session.open_document(doc)
            return _document_json(doc)

    @app.post(API + "/documents/open")
    def open_doc(body: PathBody):
        try:
            doc = load_document(body.path)
        except FileNotFoundError:
            raise HTTPException(404, f"no such file: {body.path}")
        except FormatError as exc:
            raise HTTPException(422, str(exc))
        with ws.lock:
            ws.session.open_document(doc)
            return _document_json(doc)

    @app.get(API + "/documents/document")
    def get_doc(path: str):
        with ws.lock:
            return _document_json(doc_or_404(path))

    @app.post(API + "/documents/save")
    def save_doc(body: SaveBody):
        doc = doc_or_404(body.path)
        with ws.lock:
            try:
                save_document(doc, body.to)
            except OSError as exc:
                raise HTTPException(422, str(exc))
            return {"saved": doc.path}

    @app.post(API + "/documents/insert-cell")
    def insert_cell(body: InsertCellBody):
        doc = doc_or_404(body.path)
        with ws.lock:
            group_id = body.group_id if body.group_id is not None \
                else doc.root.id
            try:
                cell_id = doc.insert_cell(group_id, body.position,
                                          body.kind, body.text, body.label)
            except DocumentError as exc:
                raise HTTPException(422, str(exc))
            return {"cell_id": cell_id}

    @app.post(API + "/documents/insert-group")
    def insert_group(body: InsertGroupBody):
        doc = doc_or_404(body.path)
        with ws.lock:
            group_id = body.group_id if body.group_id is not None \
                else doc.root.id
            try:
                new_id = doc.insert_group(group_id, body.position,
                                          body.kind, body.title,
                                          body.env_kind)
            except DocumentError as exc:
                raise HTTPException(422, str(exc))
            return {"group_id": new_id}

    @app.post(API + "/documents/edit-cell")
    def edit_cell(body: EditCellBody):
        doc = doc_or_404(body.path)
        with ws.lock:
            try:
                cell = doc.find_cell(body.cell_id)
            except DocumentError:
                raise HTTPException(404, f"unknown cell {body.cell_id}")
            cell.text = body.text
            ws.session._decl_cache.pop(doc.path, None)
            return {"cell_id": cell.id}

    @app.post(API + "/documents/submit-cell")
    def submit_cell(body: CellRef):
        doc = doc_or_404(body.path)
        with ws.lock:
            try:
                entry, warnings = ws.session.submit_cell(doc.path,
                                                         body.cell_id)
            except (ParseError, LexError) as exc:
                raise HTTPException(422, _parse_detail(exc))
            except NotAFormulaCell as exc:
                raise HTTPException(422, str(exc))
            except (SessionError, DocumentError) as exc:
                raise HTTPException(404, str(exc))
            selected = entry.key in ws.session.prove_selection
            return {
                "entry": _entry_json(entry, selected),
                "warnings": [{"code": w.code, "message": w.message}
                             for w in warnings],
            }

    @app.get(API + "/documents/declarations-at")
    def declarations_at(path: str, cell_id: int):
        doc = doc_or_404(path)
        with ws.lock:
            try:
                decls = ws.session.declarations_at(doc.path, cell_id)
            except (ParseError, LexError) as exc:
                raise HTTPException(422, _parse_detail(exc))
            except DocumentError as exc:
                raise HTTPException(404, str(exc))
            return {"declarations": [
                {"text": format_declaration(d),
                 "ascii": format_declaration(d, style="ascii"),
                 "origin": list(d.origin) if d.origin else None}
                for d in decls]}

    # --- session ----------------------------------------------------------

    @app.get(API + "/session/formulae")
    def all_formulae():
        with ws.lock:
            return {"entries": [
                _entry_json(e, e.key in ws.session.prove_selection)
                for e in ws.session.all_formulae()]}

    @app.post(API + "/session/archive/save")
    def archive_save(body: ArchiveBody):
        with ws.lock:
            if body.keys is None:
                keys = list(ws.session.entries)
            else:
                keys = [FormulaKey(k["doc_path"], int(k["cell_id"]))
                        for k in body.keys]
            try:
                ws.session.save_archive(keys, body.path)
            except (SessionError, OSError) as exc:
                raise HTTPException(422, str(exc))
            return {"saved": os.path.abspath(body.path),
                    "count": len(keys)}

    @app.post(API + "/session/archive/load")
    def archive_load(body: PathBody):
        with ws.lock:
            try:
                entries = ws.session.load_archive(body.path)
            except FileNotFoundError:
                raise HTTPException(404, f"no such file: {body.path}")
            except (FormatError, SessionError) as exc:
                raise HTTPException(422, str(exc))
            return {"entries": [
                _entry_json(e, e.key in ws.session.prove_selection)
                for e in entries]}

    # --- prove workflow ---------------------------------------------------

    @app.get(API + "/prove/goal")
    def get_goal():
        with ws.lock:
            return {"candidate": _key_json(ws.candidate),
                    "confirmed": _key_json(ws.confirmed)}

    @app.put(API + "/prove/goal/candidate")
    def put_candidate(body: CellRef):
        doc = doc_or_404(body.path)
        with ws.lock:
            key = FormulaKey(doc.path, body.cell_id)
            if key not in ws.session.entries:
                raise HTTPException(409,
                                    "cell has not been submitted")
            ws.candidate = key
            return {"candidate": _key_json(ws.candidate),
                    "confirmed": _key_json(ws.confirmed)}

    @app.post(API + "/prove/goal/confirm")
    def confirm_goal():
        with ws.lock:
            if ws.candidate is None:
                raise HTTPException(409, "no candidate goal")
            ws.confirmed = ws.candidate
            return {"candidate": _key_json(ws.candidate),
                    "confirmed": _key_json(ws.confirmed)}

    # knowledge and builtin selection, per activity

    def _selection_routes(activity: str):
        base = f"{API}/{activity}"

        @app.get(base + "/knowledge", name=f"{activity}_knowledge")
        def get_knowledge():
            with ws.lock:
                chosen = ws.session._selection(activity)
                return {"entries": [
                    _entry_json(e, e.key in chosen)
                    for e in ws.session.all_formulae()]}

        @app.put(base + "/knowledge", name=f"put_{activity}_knowledge")
        def put_knowledge(body: SelectionBody):
            with ws.lock:
                unit = body.unit
                if unit.get("kind") == "formula" and "key" in unit:
                    path, _, cid = unit["key"].rpartition("#")
                    unit = {"kind": "formula", "doc_path": path,
                            "cell_id": int(cid)}
                try:
                    ws.session.set_selection(activity, unit, body.selected)
                    state = ws.session.selection_state(activity, unit)
                except (UnknownUnit, SessionError, DocumentError) as exc:
                    raise HTTPException(404, str(exc))
                return {"state": state}

        @app.get(base + "/knowledge/state",
                 name=f"{activity}_knowledge_state")
        def knowledge_state(kind: str, path: str = "",
                            id: Optional[int] = None):
            unit: dict = {"kind": kind}
            if kind == "formula":
                unit.update(doc_path=path, cell_id=id)
            elif kind == "group":
                unit.update(doc_path=path, group_id=id)
            elif kind == "document":
                unit.update(doc_path=path)
            elif kind == "archive":
                unit.update(path=path)
            with ws.lock:
                try:
                    return {"state":
                            ws.session.selection_state(activity, unit)}
                except (UnknownUnit, SessionError, DocumentError) as exc:
                    raise HTTPException(404, str(exc))

        @app.get(base + "/builtins", name=f"{activity}_builtins")
        def get_builtins():
            with ws.lock:
                groups = []
                for group, members in BUILTIN_GROUPS.items():
                    groups.append({
                        "group": group,
                        "state": ws.session.builtin_selection_state(
                            activity, group),
                        "members": [
                            {"name": m,
                             "selected": m in ws.session._builtin_selection(
                                 activity)}
                            for m in members],
                    })
                return {"groups": groups}

        @app.put(base + "/builtins", name=f"put_{activity}_builtins")
        def put_builtins(body: BuiltinBody):
            with ws.lock:
                try:
                    ws.session.set_builtin_selection(activity, body.unit,
                                                     body.selected)
                    state = ws.session.builtin_selection_state(activity,
                                                               body.unit)
                except UnknownUnit as exc:
                    raise HTTPException(404, str(exc))
                return {"state": state}

    _selection_routes("prove")
    _selection_routes("compute")

    @app.get(API + "/prove/rules")
    def get_rules():
        with ws.lock:
            return {"rules": _rule_json(ws.config)}

    @app.put(API + "/prove/rules")
    def put_rule(body: RuleStateBody):
        with ws.lock:
            state = ws.config.rule_states.get(body.rule_id)
            if state is None:
                raise HTTPException(422,
                                    f"unknown rule {body.rule_id!r}")
            if body.priority is not None \
                    and not 1 <= body.priority <= 100:
                raise HTTPException(422, "priority out of range 1..100")
            if body.active is not None:
                state.active = body.active
            if body.priority is not None:
                state.priority = body.priority
            if body.explain is not None:
                state.explain = body.explain
            return {"rules": _rule_json(ws.config)}

    @app.get(API + "/prove/strategy")
    def get_strategy():
        with ws.lock:
            return _strategy_json(ws.config)

    @app.put(API + "/prove/strategy")
    def put_strategy(body: StrategyBody):
        with ws.lock:
            if body.strategy_id is not None \
                    and body.strategy_id not in STRATEGIES:
                raise HTTPException(422,
                                    f"unknown strategy {body.strategy_id!r}")
            if body.strategy_id is not None:
                ws.config.strategy_id = body.strategy_id
            if body.alternatives is not None:
                if body.alternatives < 1:
                    raise HTTPException(422, "alternatives must be >= 1")
                ws.config.alternatives = body.alternatives
            limits = ws.config.limits
            changes = {}
            if body.max_depth is not None:
                changes["max_depth"] = body.max_depth
            if body.max_nodes is not None:
                changes["max_nodes"] = body.max_nodes
            if body.timeout is not None:
                changes["timeout"] = body.timeout
            if changes:
                if any(v <= 0 for v in changes.values()):
                    raise HTTPException(422, "limits must be positive")
                ws.config.limits = dataclasses.replace(limits, **changes)
            return _strategy_json(ws.config)

    # --- submit and jobs --------------------------------------------------

    def _capture_snapshot() -> SettingsSnapshot:
        if ws.confirmed is None:
            raise HTTPException(409, "no confirmed goal")
        config = dataclasses.replace(
            ws.config,
            rule_states={k: dataclasses.replace(v)
                         for k, v in ws.config.rule_states.items()},
            builtins=frozenset(ws.session.prove_builtins),
            language=ws.language)
        knowledge = [
            (e.key.doc_path, e.key.cell_id)
            for e in ws.session.all_formulae()
            if e.key in ws.session.prove_selection and e.key != ws.confirmed]
        return snapshot_config(
            config, goal_key=(ws.confirmed.doc_path, ws.confirmed.cell_id),
            knowledge=knowledge)

    @app.get(API + "/prove/snapshot-preview")
    def snapshot_preview():
        with ws.lock:
            return {"snapshot": snapshot_to_jsonable(_capture_snapshot())}

    @app.post(API + "/prove/submit")
    def submit():
        with ws.lock:
            snapshot = _capture_snapshot()
            if ws.confirmed not in ws.session.entries:
                raise HTTPException(409, "confirmed goal no longer exists")
            goal_entry = ws.session.entries[ws.confirmed]
            kb = [(ws.session.entries[FormulaKey(p, c)].label,
                   ws.session.entries[FormulaKey(p, c)].formula)
                  for p, c in snapshot.knowledge]
            proof_id = ws.take_proof_id()
            job = ProofJob(proof_id, snapshot)
            ws.jobs[proof_id] = job
        config = restore_settings(snapshot)

        def run():
            try:
                tree = prove(goal_entry.formula, kb, config,
                             event_sink=job.sink)
                job.finish(tree)
            except Exception as exc:  # surfaced via job status
                job.finish(None, error=str(exc))

        threading.Thread(target=run, daemon=True).start()
        return {"proof_id": proof_id}

    @app.get(API + "/proofs")
    def list_proofs():
        with ws.lock:
            jobs = list(ws.jobs.values())
        out = []
        for job in jobs:
            with job.cond:
                item = {"proof_id": job.proof_id,
                        "done": job.done,
                        "goal_key": list(job.snapshot.goal_key)}
                if job.done and job.tree is not None:
                    item["success"] = job.tree.success
                if job.error:
                    item["error"] = job.error
            out.append(item)
        return {"proofs": out}

    @app.get(API + "/proofs/{proof_id}/tree")
    def proof_tree(proof_id: str):
        job = job_or_404(proof_id)
        if job.error:
            raise HTTPException(422, job.error)
        tree = job.current_tree()
        with job.cond:
            done = job.done
        if not tree.nodes:
            return {"done": done, "tree": None}
        return {"done": done, "tree": tree_to_jsonable(tree)}

    @app.get(API + "/proofs/{proof_id}/events")
    def proof_events(proof_id: str, start: int = 0):
        job = job_or_404(proof_id)

        def stream() -> Iterator[str]:
            i = start
            while True:
                with job.cond:
                    while i >= len(job.events) and not job.done:
                        job.cond.wait(timeout=0.5)
                    chunk = job.events[i:]
                    done = job.done
                for event in chunk:
                    yield "data: " + json.dumps(event) + "\n\n"
                i += len(chunk)
                if done and i >= len(job.events):
                    return

        return StreamingResponse(stream(),
                                 media_type="text/event-stream")

    @app.get(API + "/proofs/{proof_id}/text")
    def proof_text(proof_id: str, lang: Optional[str] = None):
        job = job_or_404(proof_id)
        with job.cond:
            if not job.done:
                raise HTTPException(409, "proof still running")
            if job.tree is None:
                raise HTTPException(422, job.error or "proof crashed")
            tree = job.tree
        with ws.lock:
            language = lang or ws.language
            labels = ws.label_resolver()
        doc = render_proof(tree, language=language, lang_dir=ws.lang_dir,
                           template_dir=ws.template_dir, labels=labels)
        return blocks_to_json(doc)

    @app.get(API + "/proofs/{proof_id}/snapshot")
    def proof_snapshot(proof_id: str):
        job = job_or_404(proof_id)
        return {"snapshot": snapshot_to_jsonable(job.snapshot)}

    @app.post(API + "/proofs/{proof_id}/restore-settings")
    def proof_restore(proof_id: str):
        job = job_or_404(proof_id)
        snapshot = job.snapshot
        try:
            config = restore_settings(snapshot)
        except InvalidSnapshot as exc:
            raise HTTPException(422, str(exc))
        with ws.lock:
            ws.config = config
            ws.session.prove_builtins.clear()
            ws.session.prove_builtins.update(snapshot.builtins)
            ws.session.prove_selection.clear()
            for p, c in snapshot.knowledge:
                key = FormulaKey(p, c)
                if key in ws.session.entries:
                    ws.session.prove_selection.add(key)
            if snapshot.goal_key is not None:
                key = FormulaKey(*snapshot.goal_key)
                if key in ws.session.entries:
                    ws.candidate = key
                    ws.confirmed = key
            ws.language = snapshot.language
            return {"snapshot": snapshot_to_jsonable(snapshot)}

    @app.post(API + "/proofs/{proof_id}/write-back")
    def proof_write_back(proof_id: str, body: CellRef):
        job = job_or_404(proof_id)
        with job.cond:
            if not job.done or job.tree is None:
                raise HTTPException(409, "proof still running")
            tree = job.tree
        doc = doc_or_404(body.path)
        with ws.lock:
            translator = Translator(ws.language, ws.lang_dir)
            if tree.success:
                summary = translator.format("proof.success")
            elif tree.reason == "limit":
                summary = translator.format("proof.failure-limit")
            elif tree.reason == "cancelled":
                summary = translator.format("proof.failure-cancelled")
            else:
                summary = translator.format("cli.failed")
            record = ProofResultRecord(
                proof_id, tree.success, job.snapshot,
                datetime.datetime.now(datetime.timezone.utc).isoformat(),
                summary)
            try:
                cell = write_back(doc, body.cell_id, record)
            except DocumentError as exc:
                raise HTTPException(404, str(exc))
            return {"cell_id": cell.id}

    # --- compute ----------------------------------------------------------

    @app.post(API + "/compute")
    def do_compute(body: ComputeBody):
        try:
            expr = parse_formula(body.expr)
        except (ParseError, LexError) as exc:
            raise HTTPException(422, _parse_detail(exc))
        with ws.lock:
            if body.use_compute_selections:
                kb = [(e.label, e.formula)
                      for e in ws.session.selected_entries("compute")]
                builtins = frozenset(ws.session.compute_builtins)
            else:
                kb = []
                builtins = frozenset()
        limit_hit = False
        try:
            outcome = compute(expr, kb, builtins,
                              step_limit=body.step_limit)
            result, trace = outcome.result, outcome.trace
        except StepLimitExceeded as exc:
            result, trace = exc.partial, exc.trace
            limit_hit = True
        return {
            "result": format_formula(result),
            "ascii": format_formula(result, style="ascii"),
            "steps": len(trace),
            "step_limit_exceeded": limit_hit,
            "trace": trace,
        }

    # --- preferences ------------------------------------------------------

    @app.get(API + "/preferences/languages")
    def languages():
        with ws.lock:
            return {"languages": available_languages(ws.lang_dir)}

    @app.get(API + "/preferences/language")
    def get_language():
        with ws.lock:
            return {"language": ws.language}

    @app.put(API + "/preferences/language")
    def put_language(body: LanguageBody):
        with ws.lock:
            known = available_languages(ws.lang_dir)
            if body.language not in known:
                raise HTTPException(422,
                                    f"unknown language {body.language!r}")
            ws.language = body.language
            return {"language": ws.language}

    @app.get(API + "/preferences/catalog")
    def get_catalog(lang: Optional[str] = None):
        # the full resolved catalog for one language, English filling
        # any untranslated key, so clients never hardcode a string
        with ws.lock:
            tag = lang or ws.language
            if tag not in available_languages(ws.lang_dir):
                raise HTTPException(422, f"unknown language {tag!r}")
            entries = dict(english_catalog().entries)
            if tag != "en":
                overlay = load_catalog(tag, ws.lang_dir).entries
                for key in entries:
                    if key in overlay:
                        entries[key] = overlay[key]
            return {"language": tag, "entries": entries}

    return app


def serve(addr: Optional[str] = None,
          lang_dir: Optional[str] = None,
          template_dir: Optional[str] = None) -> None:
    """Run the service with uvicorn; addr is host:port."""
    import uvicorn

    addr = addr or os.environ.get("TMA_ADDR") or "127.0.0.1:8024"
    host, _, port = addr.rpartition(":")
    app = create_app(lang_dir=lang_dir, template_dir=template_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
