"""Proof search over and-or trees.

Two strategies drive the same rule machinery.  apply-first commits to
the best applicable rule and backtracks on failure, so the tree shows
only what was actually tried.  branch-alternatives materializes up to
K alternative rule applications under an or-node before exploring
them, so the tree also shows the roads not taken (pruned).

The search is fully deterministic: rule order, assumption order, and
candidate discovery order are all fixed.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional

from .formulas import Formula, to_jsonable
from .printer import format_formula
from .rules import (
    RULE_INDEX, RULES, ProofSituation, RuleApplication, RuleContext,
)


class ProverError(Exception):
    pass


class InvalidSnapshot(ProverError):
    pass


class UnknownStrategy(ProverError):
    pass


STRATEGIES = ("apply-first", "branch-alternatives")

DEFAULT_BUILTINS = frozenset(
    {"arithmetic", "logic", "sets", "tuples"})


@dataclass
class RuleState:
    rule_id: str
    active: bool = True
    priority: int = 50
    explain: bool = True


@dataclass(frozen=True)
class Limits:
    max_depth: int = 30
    max_nodes: int = 500
    timeout: float = 10.0


@dataclass
class ProverConfig:
    rule_states: dict[str, RuleState] = field(default_factory=dict)
    strategy_id: str = "apply-first"
    limits: Limits = Limits()
    builtins: frozenset[str] = DEFAULT_BUILTINS
    language: str = "en"
    alternatives: int = 4  # K: or-node width in branch-alternatives


def default_config() -> ProverConfig:
    states = {r.id: RuleState(r.id, True, r.default_priority,
                              r.default_explain) for r in RULES}
    return ProverConfig(rule_states=states)


@dataclass(frozen=True)
class SettingsSnapshot:
    """Everything needed to rerun a proof the same way."""

    goal_key: Optional[tuple[str, int]]
    knowledge: tuple[tuple[str, int], ...]
    builtins: frozenset[str]
    rule_states: tuple[tuple[str, bool, int, bool], ...]
    strategy_id: str
    limits: Limits
    language: str
    alternatives: int = 4


def snapshot_config(config: ProverConfig,
                    goal_key=None, knowledge=()) -> SettingsSnapshot:
    return SettingsSnapshot(
        goal_key=tuple(goal_key) if goal_key else None,
        knowledge=tuple(tuple(k) for k in knowledge),
        builtins=frozenset(config.builtins),
        rule_states=tuple(
            (s.rule_id, s.active, s.priority, s.explain)
            for s in (config.rule_states[r.id] for r in RULES)),
        strategy_id=config.strategy_id,
        limits=config.limits,
        language=config.language,
        alternatives=config.alternatives)


def restore_settings(snapshot: SettingsSnapshot) -> ProverConfig:
    if snapshot.strategy_id not in STRATEGIES:
        raise InvalidSnapshot(f"unknown strategy {snapshot.strategy_id!r}")
    states = {}
    for rule_id, active, priority, explain in snapshot.rule_states:
        if rule_id not in RULE_INDEX:
            raise InvalidSnapshot(f"unknown rule {rule_id!r}")
        if not 1 <= priority <= 100:
            raise InvalidSnapshot(f"priority {priority} out of range")
        states[rule_id] = RuleState(rule_id, active, priority, explain)
    for spec in RULES:
        states.setdefault(spec.id, RuleState(
            spec.id, True, spec.default_priority, spec.default_explain))
    return ProverConfig(
        rule_states=states,
        strategy_id=snapshot.strategy_id,
        limits=snapshot.limits,
        builtins=frozenset(snapshot.builtins),
        language=snapshot.language,
        alternatives=snapshot.alternatives)


def snapshot_to_jsonable(s: SettingsSnapshot) -> dict:
    return {
        "goal_key": list(s.goal_key) if s.goal_key else None,
        "knowledge": [list(k) for k in s.knowledge],
        "builtins": sorted(s.builtins),
        "rule_states": [
            {"rule_id": r, "active": a, "priority": p, "explain": e}
            for r, a, p, e in s.rule_states],
        "strategy_id": s.strategy_id,
        "limits": {"max_depth": s.limits.max_depth,
                   "max_nodes": s.limits.max_nodes,
                   "timeout": s.limits.timeout},
        "language": s.language,
        "alternatives": s.alternatives,
    }


def snapshot_from_jsonable(data: dict) -> SettingsSnapshot:
    try:
        limits = Limits(**data.get("limits", {}))
        return SettingsSnapshot(
            goal_key=tuple(data["goal_key"]) if data.get("goal_key")
            else None,
            knowledge=tuple(tuple(k) for k in data.get("knowledge", ())),
            builtins=frozenset(data.get("builtins", ())),
            rule_states=tuple(
                (r["rule_id"], bool(r["active"]), int(r["priority"]),
                 bool(r["explain"]))
                for r in data.get("rule_states", ())),
            strategy_id=data["strategy_id"],
            limits=limits,
            language=data.get("language", "en"),
            alternatives=int(data.get("alternatives", 4)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSnapshot(str(exc)) from None


# --- tree -----------------------------------------------------------------

PENDING, PROVED, FAILED, PRUNED = "pending", "proved", "failed", "pruned"


@dataclass
class ProofNode:
    id: int
    node_type: str  # initial | situation | and | or | terminal
    status: str = PENDING
    rule_id: Optional[str] = None
    parent_id: Optional[int] = None
    children: list[int] = field(default_factory=list)
    payload: dict = field(default_factory=dict)
    explain: bool = True
    depth: int = 0


@dataclass
class ProofTree:
    nodes: dict[int, ProofNode] = field(default_factory=dict)
    events: list[dict] = field(default_factory=list)
    root_id: int = 0
    reason: Optional[str] = None

    @property
    def root(self) -> ProofNode:
        return self.nodes[self.root_id]

    @property
    def success(self) -> bool:
        return self.root.status == PROVED


def _situation_payload(sit: ProofSituation) -> dict:
    return {
        "goal": {"text": format_formula(sit.goal),
                 "ascii": format_formula(sit.goal, style="ascii"),
                 "ast": to_jsonable(sit.goal)},
        "assumptions": [
            {"label": label, "text": format_formula(f),
             "ascii": format_formula(f, style="ascii")}
            for label, f in sit.assumptions],
        "fixed_constants": sorted(sit.fixed_constants),
        "depth": sit.depth,
    }


def applicable_rules(situation: ProofSituation,
                     rule_states: dict[str, RuleState],
                     context: RuleContext) -> list[RuleApplication]:
    """All applications of active rules, best first: ascending
    priority, ties broken by the rule list order.  Applications that
    would reproduce the parent situation unchanged are dropped."""
    ranked = []
    for index, spec in enumerate(RULES):
        state = rule_states.get(spec.id)
        if state is None or not state.active:
            continue
        ranked.append((state.priority, index, spec))
    ranked.sort(key=lambda t: (t[0], t[1]))
    out: list[RuleApplication] = []
    for _, _, spec in ranked:
        for app in spec.apply(situation, context):
            if any(p.same_state(situation) for p in app.produced):
                continue
            out.append(app)
    return out


class _Abort(Exception):
    def __init__(self, reason: str):
        self.reason = reason


class _Search:
    def __init__(self, tree: ProofTree, config: ProverConfig,
                 sink: Optional[Callable[[dict], None]],
                 cancelled: Optional[Callable[[], bool]]):
        self.tree = tree
        self.config = config
        self.sink = sink
        self.cancelled = cancelled
        self.context = RuleContext(builtins=frozenset(config.builtins))
        self.t0 = time.monotonic()
        self.limit_hit = False

    # --- events ---------------------------------------------------------

    def emit(self, event: dict) -> None:
        event["seq"] = len(self.tree.events)
        self.tree.events.append(event)
        if self.sink is not None:
            self.sink(event)

    def add_node(self, node_type: str, parent_id: Optional[int],
                 rule_id: Optional[str] = None, payload: Optional[dict]
                 = None, depth: int = 0) -> int:
        if len(self.tree.nodes) >= self.config.limits.max_nodes:
            raise _Abort("limit")
        node_id = len(self.tree.nodes)
        explain = True
        if rule_id is not None:
            explain = self.config.rule_states[rule_id].explain
        node = ProofNode(node_id, node_type, PENDING, rule_id, parent_id,
                         [], payload or {}, explain, depth)
        self.tree.nodes[node_id] = node
        if parent_id is not None:
            self.tree.nodes[parent_id].children.append(node_id)
        event = {"kind": "node-added", "node_id": node_id,
                 "node_type": node_type, "status": PENDING,
                 "payload": node.payload, "explain": explain,
                 "depth": depth}
        if parent_id is not None:
            event["parent_id"] = parent_id
        if rule_id is not None:
            event["rule_id"] = rule_id
        self.emit(event)
        return node_id

    def set_status(self, node_id: int, status: str) -> None:
        node = self.tree.nodes[node_id]
        if node.status == status:
            return
        node.status = status
        self.emit({"kind": "status-changed", "node_id": node_id,
                   "status": status})

    # --- limits ---------------------------------------------------------

    def check(self) -> None:
        if self.cancelled is not None and self.cancelled():
            raise _Abort("cancelled")
        if time.monotonic() - self.t0 > self.config.limits.timeout:
            raise _Abort("limit")

    # --- shared exploration ---------------------------------------------

    def explore_application(self, app_node: int, app: RuleApplication,
                            prove_fn) -> bool:
        """Expand one rule application; True when its subtree proves."""
        if not app.produced:
            self.set_status(app_node, PROVED)
            return True
        node = self.tree.nodes[app_node]
        for sit in app.produced:
            if sit.depth > self.config.limits.max_depth:
                self.limit_hit = True
                self.set_status(app_node, FAILED)
                return False
            sit_node = self.add_node("situation", app_node,
                                     payload=_situation_payload(sit),
                                     depth=sit.depth)
            if not prove_fn(sit_node, sit):
                self.set_status(app_node, FAILED)
                return False
        self.set_status(app_node, PROVED)
        return True

    def application_node(self, parent: int, app: RuleApplication,
                         depth: int) -> int:
        node_type = "terminal" if not app.produced else "and"
        return self.add_node(node_type, parent, rule_id=app.rule_id,
                             payload=dict(app.payload), depth=depth)

    # --- strategies -----------------------------------------------------

    def prove_apply_first(self, node_id: int, sit: ProofSituation) -> bool:
        self.check()
        apps = applicable_rules(sit, self.config.rule_states, self.context)
        for app in apps:
            app_node = self.application_node(node_id, app, sit.depth)
            if self.explore_application(app_node, app,
                                        self.prove_apply_first):
                self.set_status(node_id, PROVED)
                return True
        self.set_status(node_id, FAILED)
        return False

    def prove_branching(self, node_id: int, sit: ProofSituation) -> bool:
        self.check()
        apps = applicable_rules(sit, self.config.rule_states, self.context)
        apps = apps[:self.config.alternatives]
        if len(apps) <= 1:
            for app in apps:
                app_node = self.application_node(node_id, app, sit.depth)
                if self.explore_application(app_node, app,
                                            self.prove_branching):
                    self.set_status(node_id, PROVED)
                    return True
            self.set_status(node_id, FAILED)
            return False
        or_node = self.add_node("or", node_id, depth=sit.depth)
        app_nodes = [self.application_node(or_node, app, sit.depth)
                     for app in apps]
        for app, app_node in zip(apps, app_nodes):
            if self.explore_application(app_node, app,
                                        self.prove_branching):
                for other in app_nodes:
                    if self.tree.nodes[other].status == PENDING:
                        self.set_status(other, PRUNED)
                self.set_status(or_node, PROVED)
                self.set_status(node_id, PROVED)
                return True
        self.set_status(or_node, FAILED)
        self.set_status(node_id, FAILED)
        return False


def prove(goal: Formula, knowledge: Iterable[tuple[str, Formula]],
          config: Optional[ProverConfig] = None,
          event_sink: Optional[Callable[[dict], None]] = None,
          cancelled: Optional[Callable[[], bool]] = None) -> ProofTree:
    """Run the configured strategy to a finished tree.

    knowledge: ordered (label, formula) pairs.  A failing proof is a
    normal result; the tree's root is then failed, with reason "limit"
    when a resource limit cut the search short."""
    if config is None:
        config = default_config()
    if config.strategy_id not in STRATEGIES:
        raise UnknownStrategy(config.strategy_id)
    for rule_id, state in config.rule_states.items():
        if rule_id not in RULE_INDEX:
            raise InvalidSnapshot(f"unknown rule {rule_id!r}")
        if not 1 <= state.priority <= 100:
            raise InvalidSnapshot(f"priority {state.priority} out of range")

    seen_labels: set[str] = set()
    assumptions = []
    for label, f in knowledge:
        base, n = label, 2
        while label in seen_labels:
            label = f"{base}~{n}"
            n += 1
        seen_labels.add(label)
        assumptions.append((label, f))
    sit = ProofSituation(
        goal=goal,
        assumptions=tuple(assumptions),
        history=frozenset({format_formula(goal, style="ascii")}))

    tree = ProofTree()
    search = _Search(tree, config, event_sink, cancelled)
    root = search.add_node("initial", None,
                           payload=_situation_payload(sit))
    try:
        if config.strategy_id == "apply-first":
            search.prove_apply_first(root, sit)
        else:
            search.prove_branching(root, sit)
        if search.limit_hit and not tree.success:
            tree.reason = "limit"
    except _Abort as abort:
        tree.reason = abort.reason
    # leave no loose ends: anything still pending was never decided
    for node in tree.nodes.values():
        if node.status == PENDING:
            if node.id == tree.root_id and tree.reason is None:
                search.set_status(node.id, FAILED)
            else:
                search.set_status(node.id, PRUNED)
    if tree.root.status in (PENDING, PRUNED):
        tree.root.status = FAILED
        search.emit({"kind": "status-changed", "node_id": tree.root_id,
                     "status": FAILED})
    search.emit({"kind": "finished", "node_id": tree.root_id,
                 "status": tree.root.status, "reason": tree.reason})
    return tree


# --- serialization and replay ---------------------------------------------

def canonical(tree: ProofTree) -> dict:
    """Structure-only view: ids, types, rules, statuses, child order."""

    def node(node_id: int) -> dict:
        n = tree.nodes[node_id]
        return {"id": n.id, "type": n.node_type, "rule_id": n.rule_id,
                "status": n.status,
                "children": [node(c) for c in n.children]}

    return node(tree.root_id)


def canonical_json(tree: ProofTree) -> str:
    return json.dumps(canonical(tree), sort_keys=True)


def replay(events: Iterable[dict]) -> ProofTree:
    """Rebuild the tree a client would hold after consuming the
    event stream."""
    tree = ProofTree()
    for event in events:
        kind = event["kind"]
        if kind == "node-added":
            node = ProofNode(
                id=event["node_id"],
                node_type=event["node_type"],
                status=event.get("status", PENDING),
                rule_id=event.get("rule_id"),
                parent_id=event.get("parent_id"),
                payload=dict(event.get("payload", {})),
                explain=event.get("explain", True),
                depth=event.get("depth", 0))
            tree.nodes[node.id] = node
            if node.parent_id is not None:
                tree.nodes[node.parent_id].children.append(node.id)
        elif kind == "status-changed":
            tree.nodes[event["node_id"]].status = event["status"]
        elif kind == "finished":
            tree.reason = event.get("reason")
    return tree


def tree_to_jsonable(tree: ProofTree) -> dict:
    return {
        "root": tree.root_id,
        "reason": tree.reason,
        "success": tree.success,
        "nodes": {
            str(n.id): {
                "id": n.id,
                "type": n.node_type,
                "status": n.status,
                "rule_id": n.rule_id,
                "parent_id": n.parent_id,
                "children": list(n.children),
                "explain": n.explain,
                "depth": n.depth,
                "payload": n.payload,
            } for n in tree.nodes.values()
        },
    }


def recompute_statuses(tree: ProofTree) -> dict[int, str]:
    """Fold statuses bottom-up from the stored leaf statuses, for
    checking the incremental bookkeeping against the algebra."""
    out: dict[int, str] = {}

    def fold(node_id: int) -> str:
        n = tree.nodes[node_id]
        if not n.children:
            out[node_id] = n.status
            return n.status
        child_statuses = [fold(c) for c in n.children]
        if n.node_type in ("and", "terminal"):
            if any(s == FAILED for s in child_statuses):
                status = FAILED
            elif all(s == PROVED for s in child_statuses):
                status = PROVED
            else:
                status = n.status
        else:  # initial | situation | or
            if any(s == PROVED for s in child_statuses):
                status = PROVED
            elif all(s in (FAILED, PRUNED) for s in child_statuses):
                status = FAILED
            else:
                status = n.status
        out[node_id] = status
        return status

    fold(tree.root_id)
    return out
