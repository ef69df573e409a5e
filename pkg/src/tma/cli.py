"""Headless command line driver.

Batch-elaborates documents, runs proofs and computations, manages
archives and languages, and launches the HTTP service.  Data goes to
stdout, diagnostics to stderr; prove exits 0 when the goal is proved,
1 when the attempt fails, 2 on any error.
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys
from typing import Optional

import click

from .computation import (
    BUILTIN_GROUPS, BUILTIN_MEMBERS, StepLimitExceeded, compute,
)
from .document import DocumentError, FormatError, load_document
from .i18n import Translator, available_languages
from .lexer import LexError
from .parser import ParseError, parse_formula
from .presenter import blocks_to_json, render_html, render_proof, render_text
from .printer import format_formula
from .prover import (
    RULE_INDEX, STRATEGIES, default_config, prove, tree_to_jsonable,
)
from .session import Session, SessionError


def _config_path() -> str:
    default = os.path.join(os.path.expanduser("~"), ".config", "tma",
                           "config.json")
    return os.environ.get("TMA_CONFIG", default)


def _stored_preferences() -> dict:
    try:
        with open(_config_path(), encoding="utf-8") as fh:
            data = json.load(fh)
        return data if isinstance(data, dict) else {}
    except (OSError, json.JSONDecodeError):
        return {}


class Cli:
    """Resolved invocation context: language and catalog directory."""

    def __init__(self, lang: Optional[str], lang_dir: Optional[str]):
        self.lang_dir = lang_dir or os.environ.get("TMA_LANG_DIR") or None
        self.language = lang or os.environ.get("TMA_LANG") \
            or _stored_preferences().get("language") or "en"
        self.t = Translator(self.language, self.lang_dir)

    def say(self, key: str, **slots) -> None:
        click.echo(self.t.format(key, **slots), err=True)

    def out(self, text: str) -> None:
        click.echo(text)

    def die(self, message: str) -> None:
        click.echo(self.t.format("cli.error", message=message), err=True)
        sys.exit(2)


pass_cli = click.make_pass_decorator(Cli)


@click.group()
@click.option("--lang", default=None, help="Language tag for all output.")
@click.option("--lang-dir", default=None,
              help="Directory with extra message catalogs.")
@click.pass_context
def main(ctx, lang, lang_dir):
    """Math workbench: documents, proofs, computations."""
    ctx.obj = Cli(lang, lang_dir)


def _load_documents(cli: Cli, session: Session, paths) -> None:
    for path in paths:
        try:
            session.open_document(load_document(path))
        except FileNotFoundError:
            cli.die(f"no such file: {path}")
        except (FormatError, DocumentError) as exc:
            cli.die(f"{path}: {exc}")


def _submit_document(cli: Cli, session: Session, path: str,
                     announce: bool = False) -> None:
    doc = session.document(os.path.abspath(path))
    for cell in doc.cells():
        if cell.kind != "formula":
            continue
        try:
            entry, warnings = session.submit_cell(doc.path, cell.id)
        except (ParseError, LexError) as exc:
            cli.die(f"{path}#{cell.id}: {exc.message} "
                    f"at {exc.span[0]}..{exc.span[1]}")
        except SessionError as exc:
            cli.die(f"{path}#{cell.id}: {exc}")
        for w in warnings:
            cli.say("cli.submit-warning", message=w.message)
        if announce:
            cli.out(cli.t.format(
                "cli.submitted", key=entry.key.as_string(),
                label=entry.label,
                formula=format_formula(entry.formula)))


def _parse_ref(cli: Cli, ref: str) -> tuple[str, Optional[int]]:
    path, sep, serial = ref.rpartition("#")
    if not sep:
        return ref, None
    try:
        return path, int(serial)
    except ValueError:
        cli.die(f"bad cell reference {ref!r}")


@main.command()
@click.argument("documents", nargs=-1, required=True)
@pass_cli
def submit(cli, documents):
    """Elaborate every formula cell and print the session entries."""
    session = Session()
    _load_documents(cli, session, documents)
    for path in documents:
        _submit_document(cli, session, path, announce=True)


def _tree_dump(tree) -> str:
    lines = []

    def walk(node_id: int, indent: int) -> None:
        n = tree.nodes[node_id]
        head = n.node_type
        if n.rule_id:
            head += f"[{n.rule_id}]"
        lines.append("  " * indent + f"{n.id} {head} {n.status}")
        for child in n.children:
            walk(child, indent + 1)

    walk(tree.root_id, 0)
    return "\n".join(lines)


@main.command("prove")
@click.argument("goal")
@click.option("--kb", "kb_refs", multiple=True,
              help="Knowledge: a document path or path#serial. "
                   "Default: everything else in the goal's document.")
@click.option("--strategy", default=None)
@click.option("--disable-rule", "disabled", multiple=True)
@click.option("--priority", "priorities", multiple=True,
              help="rule=n with n in 1..100.")
@click.option("--no-explain", "unexplained", multiple=True,
              help="Rule whose steps stay out of the proof text.")
@click.option("--timeout", type=float, default=None)
@click.option("--max-depth", type=int, default=None)
@click.option("--max-nodes", type=int, default=None)
@click.option("--alternatives", type=int, default=None)
@click.option("--builtins", default=None,
              help="Comma list of groups/members, or all, or none.")
@click.option("--format", "fmt",
              type=click.Choice(["text", "html", "json"]), default="text")
@click.option("--template-dir", default=None,
              help="Directory with wording override templates.")
@pass_cli
def prove_cmd(cli, goal, kb_refs, strategy, disabled, priorities,
              unexplained, timeout, max_depth, max_nodes, alternatives,
              builtins, fmt, template_dir):
    """Prove GOAL (path#serial) from selected knowledge."""
    goal_path, goal_serial = _parse_ref(cli, goal)
    if goal_serial is None:
        cli.die(f"goal must be path#serial, got {goal!r}")

    session = Session()
    docs = [goal_path] + [p for p, _ in map(
        lambda r: _parse_ref(cli, r), kb_refs)]
    seen = []
    for p in docs:
        ap = os.path.abspath(p)
        if ap not in seen:
            seen.append(ap)
    _load_documents(cli, session, seen)
    for p in seen:
        _submit_document(cli, session, p)

    goal_key = None
    for key in session.entries:
        if key.doc_path == os.path.abspath(goal_path) \
                and key.cell_id == goal_serial:
            goal_key = key
    if goal_key is None:
        cli.die(f"no formula at {goal!r}")
    goal_entry = session.entries[goal_key]

    if kb_refs:
        wanted = []
        for ref in kb_refs:
            path, serial = _parse_ref(cli, ref)
            ap = os.path.abspath(path)
            keys = [k for k in session.entries
                    if k.doc_path == ap
                    and (serial is None or k.cell_id == serial)]
            if not keys:
                cli.die(f"no formulas at {ref!r}")
            wanted += keys
        kb_keys = [k for k in session.entries
                   if k in set(wanted) and k != goal_key]
    else:
        kb_keys = [k for k in session.entries if k != goal_key]
    kb = [(session.entries[k].label, session.entries[k].formula)
          for k in kb_keys]

    config = default_config()
    if strategy is not None:
        if strategy not in STRATEGIES:
            cli.die(f"unknown strategy {strategy!r}")
        config.strategy_id = strategy
    for rule in disabled:
        if rule not in RULE_INDEX:
            cli.die(f"unknown rule {rule!r}")
        config.rule_states[rule].active = False
    for rule in unexplained:
        if rule not in RULE_INDEX:
            cli.die(f"unknown rule {rule!r}")
        config.rule_states[rule].explain = False
    for spec in priorities:
        rule, sep, value = spec.partition("=")
        if not sep or rule not in RULE_INDEX:
            cli.die(f"bad priority {spec!r}")
        try:
            n = int(value)
        except ValueError:
            cli.die(f"bad priority {spec!r}")
        if not 1 <= n <= 100:
            cli.die(f"priority {n} out of range 1..100")
        config.rule_states[rule].priority = n
    limit_changes = {}
    if timeout is not None:
        limit_changes["timeout"] = timeout
    if max_depth is not None:
        limit_changes["max_depth"] = max_depth
    if max_nodes is not None:
        limit_changes["max_nodes"] = max_nodes
    if limit_changes:
        config.limits = dataclasses.replace(config.limits, **limit_changes)
    if alternatives is not None:
        config.alternatives = alternatives
    if builtins is not None:
        config.builtins = _builtin_set(cli, builtins)
    config.language = cli.language

    tree = prove(goal_entry.formula, kb, config)
    labels = {e.label: e.key for e in session.entries.values()}
    rendered = render_proof(tree, language=cli.language,
                            lang_dir=cli.lang_dir,
                            template_dir=template_dir, labels=labels)
    if fmt == "text":
        cli.out(render_text(rendered).rstrip("\n"))
        cli.out("")
        cli.out(_tree_dump(tree))
    elif fmt == "html":
        cli.out(render_html(rendered).rstrip("\n"))
    else:
        cli.out(json.dumps({
            "proved": tree.success,
            "reason": tree.reason,
            "tree": tree_to_jsonable(tree),
            "text": blocks_to_json(rendered),
        }, ensure_ascii=False, indent=1))

    if tree.success:
        cli.say("cli.proved")
        sys.exit(0)
    if tree.reason == "limit":
        cli.say("cli.proof-reason-limit")
    cli.say("cli.failed")
    sys.exit(1)


def _builtin_set(cli: Cli, spec: str) -> frozenset[str]:
    names = [s.strip() for s in spec.split(",") if s.strip()]
    if names == ["none"]:
        return frozenset()
    if names == ["all"]:
        return frozenset(BUILTIN_GROUPS)
    for name in names:
        if name not in BUILTIN_GROUPS and name not in BUILTIN_MEMBERS:
            cli.die(f"unknown builtin {name!r}")
    return frozenset(names)


@main.command("compute")
@click.argument("expr")
@click.option("--kb", "kb_refs", multiple=True)
@click.option("--builtins", default="all")
@click.option("--step-limit", type=int, default=200)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@pass_cli
def compute_cmd(cli, expr, kb_refs, builtins, step_limit, fmt):
    """Evaluate EXPR with built-in operations and selected equations."""
    try:
        parsed = parse_formula(expr)
    except (ParseError, LexError) as exc:
        cli.die(f"{exc.message} at {exc.span[0]}..{exc.span[1]}")

    session = Session()
    kb = []
    if kb_refs:
        paths = []
        for ref in kb_refs:
            path, _ = _parse_ref(cli, ref)
            ap = os.path.abspath(path)
            if ap not in paths:
                paths.append(ap)
        _load_documents(cli, session, paths)
        for p in paths:
            _submit_document(cli, session, p)
        for ref in kb_refs:
            path, serial = _parse_ref(cli, ref)
            ap = os.path.abspath(path)
            for key, entry in session.entries.items():
                if key.doc_path == ap and (serial is None
                                           or key.cell_id == serial):
                    kb.append((entry.label, entry.formula))

    active = _builtin_set(cli, builtins)
    limit_hit = False
    try:
        outcome = compute(parsed, kb, active, step_limit=step_limit)
        result, trace = outcome.result, outcome.trace
    except StepLimitExceeded as exc:
        result, trace = exc.partial, exc.trace
        limit_hit = True

    if fmt == "json":
        cli.out(json.dumps({
            "result": format_formula(result),
            "steps": len(trace),
            "step_limit_exceeded": limit_hit,
            "trace": trace,
        }, ensure_ascii=False, indent=1))
    else:
        cli.out(format_formula(result))
    if limit_hit:
        cli.say("cli.compute-step-limit",
                result=format_formula(result))
    cli.say("cli.compute-steps", count=len(trace))


@main.group()
def archive():
    """Save or load formula archives."""


@archive.command("save")
@click.argument("archive_path")
@click.argument("documents", nargs=-1, required=True)
@pass_cli
def archive_save(cli, archive_path, documents):
    """Submit DOCUMENTS and store all entries in ARCHIVE_PATH."""
    session = Session()
    _load_documents(cli, session, documents)
    for path in documents:
        _submit_document(cli, session, path)
    try:
        session.save_archive(list(session.entries), archive_path)
    except OSError as exc:
        cli.die(str(exc))
    cli.say("cli.archive-saved", count=len(session.entries),
            path=os.path.abspath(archive_path))


@archive.command("load")
@click.argument("archive_path")
@pass_cli
def archive_load(cli, archive_path):
    """Load ARCHIVE_PATH and print its entries."""
    session = Session()
    try:
        entries = session.load_archive(archive_path)
    except FileNotFoundError:
        cli.die(f"no such file: {archive_path}")
    except (FormatError, SessionError) as exc:
        cli.die(str(exc))
    for entry in entries:
        cli.out(cli.t.format(
            "cli.submitted", key=entry.key.as_string(),
            label=entry.label, formula=format_formula(entry.formula)))
    cli.say("cli.archive-loaded", count=len(entries),
            path=os.path.abspath(archive_path))


@main.group()
def lang():
    """List or pick the output language."""


@lang.command("list")
@pass_cli
def lang_list(cli):
    tags = available_languages(cli.lang_dir)
    cli.out(cli.t.format("cli.languages-available", tags=", ".join(tags)))


@lang.command("set")
@click.argument("tag")
@pass_cli
def lang_set(cli, tag):
    if tag not in available_languages(cli.lang_dir):
        cli.die(f"unknown language {tag!r}")
    path = _config_path()
    os.makedirs(os.path.dirname(path), exist_ok=True)
    stored = _stored_preferences()
    stored["language"] = tag
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(stored, fh)
        fh.write("\n")
    cli.say("cli.language-set", tag=tag)


@main.command()
@click.option("--addr", default=None, help="host:port to bind.")
@click.option("--template-dir", default=None)
@pass_cli
def serve(cli, addr, template_dir):
    """Run the HTTP service."""
    from .service import serve as run_service

    resolved = addr or os.environ.get("TMA_ADDR") or "127.0.0.1:8024"
    cli.say("cli.serving", addr=resolved)
    run_service(resolved, lang_dir=cli.lang_dir, template_dir=template_dir)


if __name__ == "__main__":
    main()
