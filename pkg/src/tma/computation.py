"""Built-in operation knowledge and the compute activity.

Operators are uninterpreted by default; activating a built-in member
links a symbol to its usual meaning on literal arguments.  Members are
grouped for bulk toggling and a member may belong to more than one
group (the length bars are shared by arithmetic, sets, and tuples).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .formulas import (
    FALSE, TRUE, And, App, Comparison, Const, DefEq, DefIff, Eq, Exists,
    Falsehood, Forall, Formula, Ge, Gt, Iff, Implies, In, Index, Integer,
    Le, Length, Lt, Neq, Not, Or, Rational, SetLiteral, TupleLiteral, Truth,
    Var, alpha_equal, children, free_variables, subterms, term_sort_key,
    to_jsonable,
)

# member id -> groups it belongs to
BUILTIN_MEMBERS: dict[str, tuple[str, ...]] = {
    "arithmetic.plus": ("arithmetic",),
    "arithmetic.minus": ("arithmetic",),
    "arithmetic.times": ("arithmetic",),
    "arithmetic.divide": ("arithmetic",),
    "arithmetic.power": ("arithmetic",),
    "arithmetic.compare": ("arithmetic",),
    "arithmetic.abs": ("arithmetic",),
    "logic.constants": ("logic",),
    "logic.double-negation": ("logic",),
    "logic.reflexivity": ("logic",),
    "sets.membership": ("sets",),
    "sets.cardinality": ("sets", "arithmetic"),
    "sets.operations": ("sets",),
    "tuples.length": ("tuples", "arithmetic"),
    "tuples.index": ("tuples",),
}

BUILTIN_GROUPS: dict[str, tuple[str, ...]] = {}
for _member, _groups in BUILTIN_MEMBERS.items():
    for _g in _groups:
        BUILTIN_GROUPS.setdefault(_g, ())
        BUILTIN_GROUPS[_g] = BUILTIN_GROUPS[_g] + (_member,)


def expand_builtin_selection(ids: set[str] | frozenset[str]) -> frozenset[str]:
    """Group names expand to their members; member ids pass through."""
    out: set[str] = set()
    for i in ids:
        if i in BUILTIN_GROUPS:
            out.update(BUILTIN_GROUPS[i])
        elif i in BUILTIN_MEMBERS:
            out.add(i)
    return frozenset(out)


def _num(f: Formula) -> Optional[Fraction]:
    match f:
        case Integer(v):
            return Fraction(v)
        case Rational(n, d):
            return Fraction(n, d)
        case _:
            return None


def _from_fraction(v: Fraction) -> Formula:
    if v.denominator == 1:
        return Integer(v.numerator)
    return Rational(v.numerator, v.denominator)


def _ground(f: Formula) -> bool:
    return not free_variables(f)


def _bool(v: bool) -> Formula:
    return TRUE if v else FALSE


class _Simplifier:
    def __init__(self, active: frozenset[str], notes: Optional[list] = None):
        self.active = active
        self.notes = notes if notes is not None else []

    def on(self, member: str) -> bool:
        return member in self.active

    def note(self, message: str, term: Formula) -> None:
        self.notes.append({"message": message, "term": to_jsonable(term)})

    def simplify(self, f: Formula) -> Formula:
        # bottom-up, repeated to a fixpoint with a safety cap
        for _ in range(100):
            g = self._pass(f)
            if g == f:
                return f
            f = g
        return f

    def _pass(self, f: Formula) -> Formula:
        match f:
            case Forall(binder, body) | Exists(binder, body):
                cls = type(f)
                cond = binder.condition
                if cond is not None:
                    cond = self._pass(cond)
                bounds = binder.bounds
                if bounds is not None:
                    bounds = (self._pass(bounds[0]), self._pass(bounds[1]))
                from .formulas import Binder
                return cls(Binder(binder.variables, cond, bounds),
                           self._pass(body))
            case Const() | Var() | Integer() | Rational() | Truth() | \
                    Falsehood():
                return f
        kids = children(f)
        new = tuple(self._pass(c) for c in kids)
        if new != kids:
            from .formulas import _rebuild
            f = _rebuild(f, new)
        return self._head(f)

    def _head(self, f: Formula) -> Formula:
        match f:
            case App(Const("plus"), args) if self.on("arithmetic.plus"):
                vals = [_num(a) for a in args]
                if all(v is not None for v in vals) and len(vals) >= 1:
                    return _from_fraction(sum(vals, Fraction(0)))
            case App(Const("minus"), (a, b)) if self.on("arithmetic.minus"):
                x, y = _num(a), _num(b)
                if x is not None and y is not None:
                    return _from_fraction(x - y)
            case App(Const("minus"), (a,)) if self.on("arithmetic.minus"):
                x = _num(a)
                if x is not None:
                    return _from_fraction(-x)
            case App(Const("times"), args) if self.on("arithmetic.times"):
                vals = [_num(a) for a in args]
                if all(v is not None for v in vals) and len(vals) >= 1:
                    out = Fraction(1)
                    for v in vals:
                        out *= v
                    return _from_fraction(out)
            case App(Const("divide"), (a, b)) if self.on("arithmetic.divide"):
                x, y = _num(a), _num(b)
                if x is not None and y is not None:
                    if y == 0:
                        self.note("division by zero left symbolic", f)
                        return f
                    return _from_fraction(x / y)
            case App(Const("power"), (a, b)) if self.on("arithmetic.power"):
                x = _num(a)
                match b:
                    case Integer(e) if x is not None:
                        if x == 0 and e < 0:
                            self.note("zero to a negative power left "
                                      "symbolic", f)
                            return f
                        return _from_fraction(x ** e)
            case Length(a) if self.on("arithmetic.abs"):
                x = _num(a)
                if x is not None:
                    return _from_fraction(abs(x))
            case Comparison(a, b) if not isinstance(f, In) \
                    and self.on("arithmetic.compare"):
                x, y = _num(a), _num(b)
                if x is not None and y is not None:
                    match f:
                        case Eq():
                            return _bool(x == y)
                        case Neq():
                            return _bool(x != y)
                        case Le():
                            return _bool(x <= y)
                        case Lt():
                            return _bool(x < y)
                        case Ge():
                            return _bool(x >= y)
                        case Gt():
                            return _bool(x > y)
        g = self._logic(f)
        if g is not None:
            return g
        g = self._sets_tuples(f)
        if g is not None:
            return g
        return f

    def _logic(self, f: Formula) -> Optional[Formula]:
        if self.on("logic.double-negation"):
            match f:
                case Not(Not(inner)):
                    return inner
        if self.on("logic.reflexivity"):
            match f:
                case Eq(a, b) if a == b:
                    return TRUE
                case Neq(a, b) if a == b:
                    return FALSE
        if not self.on("logic.constants"):
            return None
        match f:
            case Not(Truth()):
                return FALSE
            case Not(Falsehood()):
                return TRUE
            case And(items):
                if any(isinstance(i, Falsehood) for i in items):
                    return FALSE
                kept = tuple(i for i in items if not isinstance(i, Truth))
                if len(kept) == len(items):
                    return None
                if not kept:
                    return TRUE
                if len(kept) == 1:
                    return kept[0]
                return And(kept)
            case Or(items):
                if any(isinstance(i, Truth) for i in items):
                    return TRUE
                kept = tuple(i for i in items if not isinstance(i, Falsehood))
                if len(kept) == len(items):
                    return None
                if not kept:
                    return FALSE
                if len(kept) == 1:
                    return kept[0]
                return Or(kept)
            case Implies(Truth(), b):
                return b
            case Implies(Falsehood(), _):
                return TRUE
            case Implies(_, Truth()):
                return TRUE
            case Implies(a, Falsehood()):
                return Not(a)
            case Iff(Truth(), b) | Iff(b, Truth()):
                return b
            case Iff(Falsehood(), b) | Iff(b, Falsehood()):
                return Not(b)
        return None

    def _sets_tuples(self, f: Formula) -> Optional[Formula]:
        match f:
            case In(x, SetLiteral(elems)) if self.on("sets.membership") \
                    and _ground(x) and all(_ground(e) for e in elems):
                if any(e == x for e in elems):
                    return TRUE
                return FALSE
            case Length(SetLiteral(elems)) if self.on("sets.cardinality") \
                    and all(_ground(e) for e in elems):
                distinct = []
                for e in elems:
                    if e not in distinct:
                        distinct.append(e)
                return Integer(len(distinct))
            case SetLiteral(elems) if self.on("sets.operations") \
                    and all(_ground(e) for e in elems):
                ordered = sorted(set(elems), key=term_sort_key)
                if tuple(ordered) != elems:
                    return SetLiteral(tuple(ordered))
            case App(Const("union"), args) if self.on("sets.operations"):
                if all(isinstance(a, SetLiteral) for a in args):
                    elems: list[Formula] = []
                    for a in args:
                        elems.extend(a.elems)
                    return SetLiteral(tuple(elems))
            case App(Const("intersection"), args) if \
                    self.on("sets.operations") and len(args) == 2:
                match args[0], args[1]:
                    case SetLiteral(e1), SetLiteral(e2):
                        return SetLiteral(
                            tuple(e for e in e1 if e in e2))
            case Length(TupleLiteral(elems)) if self.on("tuples.length"):
                return Integer(len(elems))
            case Index(TupleLiteral(elems), Integer(i)) \
                    if self.on("tuples.index"):
                if 1 <= i <= len(elems):
                    return elems[i - 1]
                self.note("index outside the tuple left symbolic", f)
        return None


def builtin_simplify(f: Formula, active: set[str] | frozenset[str],
                     notes: Optional[list] = None) -> Formula:
    """Simplify using exactly the active built-in members.  Group names
    in ``active`` stand for all their members.  Inactive operators stay
    untouched."""
    return _Simplifier(expand_builtin_selection(set(active)), notes).simplify(f)


# --- compute --------------------------------------------------------------

class StepLimitExceeded(Exception):
    def __init__(self, partial: Formula, trace: list):
        super().__init__("step limit exceeded")
        self.partial = partial
        self.trace = trace


@dataclass
class ComputeResult:
    result: Formula
    trace: list[dict]


def _definition_rule(f: Formula):
    """An (optionally universally quantified) equation or equivalence,
    oriented left to right; returns (pattern vars, lhs, rhs) or None."""
    pattern_vars: list[str] = []
    body = f
    while isinstance(body, Forall):
        pattern_vars.extend(body.binder.variables)
        body = body.body
    match body:
        case DefEq(lhs, rhs) | DefIff(lhs, rhs) | Eq(lhs, rhs) | \
                Iff(lhs, rhs):
            return frozenset(pattern_vars), lhs, rhs
    return None


def match_pattern(pattern: Formula, term: Formula,
                  pattern_vars: frozenset[str],
                  sigma: Optional[dict[str, Formula]] = None
                  ) -> Optional[dict[str, Formula]]:
    """One-sided matching: pattern variables bind subterms of ``term``,
    everything else must agree literally."""
    if sigma is None:
        sigma = {}
    match pattern:
        case Var(name) if name in pattern_vars:
            if name in sigma:
                return sigma if sigma[name] == term else None
            out = dict(sigma)
            out[name] = term
            return out
        case Var(_) | Const(_) | Integer(_) | Rational() | Truth() | \
                Falsehood():
            return sigma if pattern == term else None
        case Forall() | Exists():
            return None  # no matching under binders
        case _:
            if type(pattern) is not type(term):
                return None
            pk, tk = children(pattern), children(term)
            if len(pk) != len(tk):
                return None
            for p, t in zip(pk, tk):
                sigma = match_pattern(p, t, pattern_vars, sigma)
                if sigma is None:
                    return None
            return sigma


def rewrite_first(f: Formula, rules, path=()):
    """Rewrite the first redex in pre-order; returns
    (new term, rule label, path) or None."""
    for label, pattern_vars, lhs, rhs in rules:
        sigma = match_pattern(lhs, f, pattern_vars)
        if sigma is not None:
            from .formulas import substitute
            replaced = substitute(rhs, sigma)
            if replaced != f:
                return replaced, label, path
    kids = children(f)
    # binders are opaque to compute rewriting
    if isinstance(f, (Forall, Exists)):
        return None
    for i, c in enumerate(kids):
        hit = rewrite_first(c, rules, path + (i,))
        if hit is not None:
            new_child, label, where = hit
            new = list(kids)
            new[i] = new_child
            from .formulas import _rebuild
            return _rebuild(f, tuple(new)), label, where
    return None


def compute(expr: Formula, knowledge, active_builtins,
            step_limit: int = 200) -> ComputeResult:
    """Rewrite with the selected equations left-to-right, interleaved
    with built-in simplification, until a fixpoint.

    knowledge: iterable of (label, Formula)."""
    rules = []
    for label, f in knowledge:
        rule = _definition_rule(f)
        if rule is not None:
            pattern_vars, lhs, rhs = rule
            rules.append((label, pattern_vars, lhs, rhs))
    trace: list[dict] = []
    steps = 0
    current = expr
    while True:
        notes: list = []
        simplified = builtin_simplify(current, active_builtins, notes)
        if simplified != current:
            steps += 1
            trace.append({"kind": "simplify", "before": to_jsonable(current),
                          "after": to_jsonable(simplified), "notes": notes})
            current = simplified
            if steps >= step_limit:
                raise StepLimitExceeded(current, trace)
            continue
        hit = rewrite_first(current, rules)
        if hit is None:
            return ComputeResult(current, trace)
        new, label, path = hit
        steps += 1
        trace.append({"kind": "rewrite", "rule": label,
                      "path": list(path), "before": to_jsonable(current),
                      "after": to_jsonable(new)})
        current = new
        if steps >= step_limit:
            raise StepLimitExceeded(current, trace)
