"""The inference-rule library.

Every rule is a pure function from a proof situation to a list of
possible applications.  An application either discharges the goal
(no produced situations) or reduces it to new situations, all of which
must be proved.  Several applications from one rule are alternatives;
the strategy decides how they are explored.

The soundness contract: the produced situations together entail the
parent goal under the parent assumptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .computation import builtin_simplify, match_pattern, rewrite_first
from .formulas import (
    FALSE, TRUE, And, App, Binder, Comparison, Const, DefEq, DefIff, Eq,
    Exists, Falsehood, Forall, Formula, Iff, Implies, In, Integer, Le, Not,
    Or, Rational, Truth, Var, alpha_equal, collect_names, free_variables,
    fresh_name, substitute, subterms, to_jsonable,
)
from .printer import format_formula


@dataclass(frozen=True)
class ProofSituation:
    """A goal with the knowledge available for it."""

    goal: Formula
    assumptions: tuple[tuple[str, Formula], ...] = ()
    fixed_constants: frozenset[str] = frozenset()
    depth: int = 0
    # loop guards: goals already seen along this branch
    history: frozenset[str] = frozenset()
    next_label: int = 1

    def has_assumption(self, f: Formula) -> bool:
        return any(alpha_equal(f, g) for _, g in self.assumptions)

    def used_names(self) -> set[str]:
        names = set(collect_names(self.goal)) | set(self.fixed_constants)
        for _, f in self.assumptions:
            names |= collect_names(f)
        return names

    def child(self, goal: Formula,
              new_assumptions: tuple[Formula, ...] = (),
              new_constants: tuple[str, ...] = (),
              drop_label: Optional[str] = None) -> "ProofSituation":
        assumptions = tuple((l, f) for l, f in self.assumptions
                            if l != drop_label)
        label = self.next_label
        added = []
        for f in new_assumptions:
            added.append((f"H{label}", f))
            label += 1
        goal_text = format_formula(goal, style="ascii")
        return ProofSituation(
            goal=goal,
            assumptions=assumptions + tuple(added),
            fixed_constants=self.fixed_constants | set(new_constants),
            depth=self.depth + 1,
            history=self.history | {goal_text},
            next_label=label)

    def same_state(self, other: "ProofSituation") -> bool:
        return self.goal == other.goal \
            and self.assumptions == other.assumptions \
            and self.fixed_constants == other.fixed_constants


@dataclass(frozen=True)
class RuleApplication:
    rule_id: str
    produced: tuple[ProofSituation, ...]
    payload: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RuleContext:
    builtins: frozenset[str] = frozenset()


RuleFn = Callable[[ProofSituation, RuleContext], list[RuleApplication]]


@dataclass(frozen=True)
class RuleSpec:
    id: str
    group_path: tuple[str, ...]
    default_priority: int
    apply: RuleFn
    default_explain: bool = True

    @property
    def description_key(self) -> str:
        return f"rule.{self.id}"


def _fmt(f: Formula) -> str:
    return format_formula(f, style="unicode")


def _one(rule_id: str, produced: tuple[ProofSituation, ...] = (),
         **payload) -> list[RuleApplication]:
    return [RuleApplication(rule_id, produced, payload)]


# --- termination ----------------------------------------------------------

def goal_true(sit: ProofSituation, ctx: RuleContext):
    if isinstance(sit.goal, Truth):
        return _one("goal-true")
    return []


def goal_in_kb(sit: ProofSituation, ctx: RuleContext):
    for label, f in sit.assumptions:
        if alpha_equal(f, sit.goal):
            return _one("goal-in-kb", assumption=label,
                        formula=_fmt(f))
    return []


def kb_contradiction(sit: ProofSituation, ctx: RuleContext):
    for label, f in sit.assumptions:
        if isinstance(f, Falsehood):
            return _one("kb-contradiction", assumption=label,
                        other=label, formula=_fmt(f))
        if isinstance(f, Not):
            for label2, g in sit.assumptions:
                if alpha_equal(g, f.body):
                    return _one("kb-contradiction", assumption=label,
                                other=label2, formula=_fmt(g))
    return []


# --- connectives ----------------------------------------------------------

def and_goal_split(sit: ProofSituation, ctx: RuleContext):
    match sit.goal:
        case And(items):
            produced = tuple(sit.child(i) for i in items)
            return _one("and-goal-split", produced, count=len(items))
    return []


def impl_goal_direct(sit: ProofSituation, ctx: RuleContext):
    match sit.goal:
        case Implies(a, b):
            child = sit.child(b, new_assumptions=(a,))
            return _one("impl-goal-direct", (child,),
                        assumed=_fmt(a), remaining=_fmt(b))
    return []


def _negate(f: Formula) -> Formula:
    if isinstance(f, Not):
        return f.body
    return Not(f)


def impl_goal_contrapose(sit: ProofSituation, ctx: RuleContext):
    match sit.goal:
        case Implies(a, b):
            child = sit.child(_negate(a), new_assumptions=(_negate(b),))
            return _one("impl-goal-contrapose", (child,),
                        assumed=_fmt(_negate(b)), remaining=_fmt(_negate(a)))
    return []


def or_goal(sit: ProofSituation, ctx: RuleContext):
    match sit.goal:
        case Or(items):
            out = []
            for i, disjunct in enumerate(items):
                others = tuple(_negate(d) for j, d in enumerate(items)
                               if j != i)
                child = sit.child(disjunct, new_assumptions=others)
                out.append(RuleApplication(
                    "or-goal", (child,),
                    {"chosen": _fmt(disjunct), "index": i + 1}))
            return out
    return []


def not_goal(sit: ProofSituation, ctx: RuleContext):
    match sit.goal:
        case Not(body):
            child = sit.child(FALSE, new_assumptions=(body,))
            return _one("not-goal", (child,), assumed=_fmt(body))
    return []


def iff_goal_split(sit: ProofSituation, ctx: RuleContext):
    match sit.goal:
        case Iff(a, b):
            produced = (sit.child(Implies(a, b)), sit.child(Implies(b, a)))
            return _one("iff-goal-split", produced,
                        left=_fmt(a), right=_fmt(b))
    return []


def and_kb_split(sit: ProofSituation, ctx: RuleContext):
    for label, f in sit.assumptions:
        match f:
            case And(items):
                kept = tuple((l, g) for l, g in sit.assumptions if l != label)
                parts = tuple((f"{label}.{i + 1}", g)
                              for i, g in enumerate(items))
                child = replace(sit, assumptions=kept + parts,
                                depth=sit.depth + 1)
                return _one("and-kb-split", (child,), assumption=label,
                            count=len(items))
    return []


# --- quantifiers ----------------------------------------------------------

_INTEGERS = Const("Integers")


def forall_goal_intro(sit: ProofSituation, ctx: RuleContext):
    match sit.goal:
        case Forall(binder, body):
            bounds = binder.bounds
            if bounds is not None:
                match bounds:
                    case (Integer(lo), Integer(hi)) if hi - lo <= 8:
                        # desk-scale range: prove every instance
                        var = binder.variables[0]
                        if hi < lo:
                            return _one("forall-goal-intro", (),
                                        variant="empty")
                        produced = []
                        for k in range(lo, hi + 1):
                            inst = substitute(body, {var: Integer(k)})
                            if binder.condition is not None:
                                cond = substitute(binder.condition,
                                                  {var: Integer(k)})
                                inst = Implies(cond, inst)
                            produced.append(sit.child(inst))
                        return _one("forall-goal-intro", tuple(produced),
                                    variant="enumerate",
                                    enumerated=hi - lo + 1)
            avoid = sit.used_names()
            mapping: dict[str, Formula] = {}
            constants = []
            for v in binder.variables:
                name = fresh_name(v, avoid)
                avoid.add(name)
                constants.append(name)
                mapping[v] = Const(name)
            new_assumptions: list[Formula] = []
            if bounds is not None:
                lo, hi = bounds
                c = mapping[binder.variables[0]]
                new_assumptions += [Le(lo, c), Le(c, hi), In(c, _INTEGERS)]
            if binder.condition is not None:
                new_assumptions.append(substitute(binder.condition, mapping))
            child = sit.child(substitute(body, mapping),
                              new_assumptions=tuple(new_assumptions),
                              new_constants=tuple(constants))
            return _one("forall-goal-intro", (child,),
                        constants=", ".join(constants))
    return []


def _ground_candidates(sit: ProofSituation) -> list[Formula]:
    """Terms worth trying as instantiations, in a fixed discovery
    order: literals, constants, and free variables (which denote
    fixed objects) appearing in the situation."""
    out: list[Formula] = []
    seen = set()

    def visit(f: Formula):
        free = free_variables(f)
        for t in subterms(f):
            match t:
                case Integer() | Rational():
                    pass
                case Const(name) if name != "Integers":
                    pass
                case Var(name) if name in free:
                    pass
                case _:
                    continue
            if t not in seen:
                seen.add(t)
                out.append(t)

    visit(sit.goal)
    for _, f in sit.assumptions:
        visit(f)
    return out[:6]


def exists_goal_instantiate(sit: ProofSituation, ctx: RuleContext):
    match sit.goal:
        case Exists(binder, body):
            out = []
            if len(binder.variables) == 1:
                var = binder.variables[0]
                for term in _ground_candidates(sit):
                    inst = substitute(body, {var: term})
                    parts = []
                    if binder.bounds is not None:
                        lo, hi = binder.bounds
                        parts += [Le(lo, term), Le(term, hi)]
                    if binder.condition is not None:
                        parts.append(substitute(binder.condition,
                                                {var: term}))
                    goal = And(tuple(parts) + (inst,)) if parts else inst
                    out.append(RuleApplication(
                        "exists-goal-instantiate", (sit.child(goal),),
                        {"witness": _fmt(term)}))
            # fallback: prove the body for an arbitrary fresh constant
            if binder.bounds is None:
                avoid = sit.used_names()
                mapping: dict[str, Formula] = {}
                constants = []
                for v in binder.variables:
                    name = fresh_name(v, avoid)
                    avoid.add(name)
                    constants.append(name)
                    mapping[v] = Const(name)
                goal = substitute(body, mapping)
                if binder.condition is not None:
                    goal = And((substitute(binder.condition, mapping), goal))
                out.append(RuleApplication(
                    "exists-goal-instantiate", (sit.child(
                        goal, new_constants=tuple(constants)),),
                    {"witness": ", ".join(constants), "variant": "arbitrary"}))
            return out
    return []


def _strip_forall(f: Formula) -> tuple[tuple[str, ...], list, Formula]:
    """Peel a chain of unconditioned-or-conditioned universal binders;
    returns (variables, guards, matrix)."""
    variables: list[str] = []
    guards: list = []  # formulas over the variables
    while isinstance(f, Forall):
        binder = f.binder
        variables.extend(binder.variables)
        if binder.bounds is not None:
            lo, hi = binder.bounds
            v = Var(binder.variables[0])
            guards.append(Le(lo, v))
            guards.append(Le(v, hi))
        if binder.condition is not None:
            guards.append(binder.condition)
        f = f.body
    return tuple(variables), guards, f


def forall_kb_instantiate(sit: ProofSituation, ctx: RuleContext):
    out = []
    for label, f in sit.assumptions:
        if not isinstance(f, Forall):
            continue
        variables, guards, matrix = _strip_forall(f)
        pvars = frozenset(variables)
        # match the matrix (or its implication parts) against the goal
        # and the other assumptions to find useful instantiations
        patterns: list[Formula] = [matrix]
        targets: list[Formula] = [sit.goal] + [g for _, g in sit.assumptions]
        if isinstance(matrix, Implies):
            patterns = [matrix.rhs, matrix.lhs, matrix]
        for pattern in patterns:
            for target in targets:
                sigma = match_pattern(pattern, target, pvars)
                if sigma is None or set(sigma) != set(variables):
                    continue
                instance = substitute(matrix, sigma)
                inst_guards = [substitute(g, sigma) for g in guards]
                if inst_guards:
                    guard = And(tuple(inst_guards)) \
                        if len(inst_guards) > 1 else inst_guards[0]
                    instance = Implies(guard, instance)
                if sit.has_assumption(instance):
                    continue
                child = replace(
                    sit,
                    assumptions=sit.assumptions
                    + ((f"H{sit.next_label}", instance),),
                    depth=sit.depth + 1,
                    next_label=sit.next_label + 1)
                app = RuleApplication(
                    "forall-kb-instantiate", (child,),
                    {"assumption": label, "instance": _fmt(instance),
                     "terms": ", ".join(
                         _fmt(sigma[v]) for v in variables)})
                if not any(a.produced and alpha_equal(
                        a.produced[0].assumptions[-1][1], instance)
                        for a in out):
                    out.append(app)
    return out


# --- knowledge ------------------------------------------------------------

def _conjuncts_present(sit: ProofSituation, f: Formula) -> bool:
    match f:
        case And(items):
            return all(sit.has_assumption(i) for i in items)
    return sit.has_assumption(f)


def modus_ponens(sit: ProofSituation, ctx: RuleContext):
    out = []
    for label, f in sit.assumptions:
        match f:
            case Implies(a, b):
                if _conjuncts_present(sit, a) and not sit.has_assumption(b):
                    child = sit.child(sit.goal, new_assumptions=(b,))
                    out.append(RuleApplication(
                        "modus-ponens", (child,),
                        {"implication": label, "variant": "forward",
                         "conclusion": _fmt(b)}))
                if alpha_equal(b, sit.goal) \
                        and format_formula(a, style="ascii") \
                        not in sit.history:
                    child = sit.child(a)
                    out.append(RuleApplication(
                        "modus-ponens", (child,),
                        {"implication": label, "variant": "backward",
                         "remaining": _fmt(a)}))
    return out


def expand_definition(sit: ProofSituation, ctx: RuleContext):
    out = []
    for label, f in sit.assumptions:
        variables, guards, matrix = _strip_forall(f)
        if guards:
            continue  # guarded definitions are not unfolded blindly
        match matrix:
            case DefIff(lhs, rhs) | DefEq(lhs, rhs):
                hit = rewrite_first(
                    sit.goal, [(label, frozenset(variables), lhs, rhs)])
                if hit is None:
                    continue
                new_goal, _, _ = hit
                if format_formula(new_goal, style="ascii") in sit.history:
                    continue
                out.append(RuleApplication(
                    "expand-definition", (sit.child(new_goal),),
                    {"definition": label, "result": _fmt(new_goal)}))
    return out


# --- simplification -------------------------------------------------------

def builtin_simplify_goal(sit: ProofSituation, ctx: RuleContext):
    simplified = builtin_simplify(sit.goal, ctx.builtins)
    if simplified == sit.goal:
        return []
    if format_formula(simplified, style="ascii") in sit.history:
        return []
    return _one("builtin-simplify-goal", (sit.child(simplified),),
                result=_fmt(simplified))


RULES: tuple[RuleSpec, ...] = (
    RuleSpec("goal-true", ("termination",), 1, goal_true),
    RuleSpec("goal-in-kb", ("termination",), 2, goal_in_kb),
    RuleSpec("kb-contradiction", ("termination",), 3, kb_contradiction),
    RuleSpec("and-goal-split", ("connectives",), 10, and_goal_split),
    RuleSpec("impl-goal-direct", ("connectives",), 11, impl_goal_direct),
    RuleSpec("impl-goal-contrapose", ("connectives",), 12,
             impl_goal_contrapose),
    RuleSpec("or-goal", ("connectives",), 13, or_goal),
    RuleSpec("not-goal", ("connectives",), 14, not_goal),
    RuleSpec("iff-goal-split", ("connectives",), 15, iff_goal_split),
    RuleSpec("and-kb-split", ("connectives",), 16, and_kb_split),
    RuleSpec("forall-goal-intro", ("quantifiers",), 30, forall_goal_intro),
    RuleSpec("exists-goal-instantiate", ("quantifiers",), 31,
             exists_goal_instantiate),
    RuleSpec("forall-kb-instantiate", ("quantifiers",), 32,
             forall_kb_instantiate),
    RuleSpec("modus-ponens", ("knowledge",), 50, modus_ponens),
    RuleSpec("expand-definition", ("knowledge",), 51, expand_definition),
    RuleSpec("builtin-simplify-goal", ("simplify",), 70,
             builtin_simplify_goal),
)

RULE_INDEX: dict[str, RuleSpec] = {r.id: r for r in RULES}

RULE_GROUPS: tuple[tuple[str, tuple[str, ...]], ...] = tuple(
    (group, tuple(r.id for r in RULES if r.group_path[0] == group))
    for group in ("termination", "connectives", "quantifiers",
                  "knowledge", "simplify"))
