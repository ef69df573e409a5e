"""Formula terms and the operations on them.

Terms are immutable; every operation returns a new term.  Variables and
constants are distinguished nodes: only variables can be bound or
substituted, application heads are always constants (or compound terms).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional


class Formula:
    """Base class for all term nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(Formula):
    name: str


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Integer(Formula):
    value: int


@dataclass(frozen=True)
class Rational(Formula):
    # kept normalized: gcd(num, den) == 1 and den > 0
    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den == 0:
            raise ValueError("zero denominator")
        n, d = self.num, self.den
        if d < 0:
            n, d = -n, -d
        g = gcd(n, d)
        if g > 1:
            n, d = n // g, d // g
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)


@dataclass(frozen=True)
class App(Formula):
    head: Formula
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Index(Formula):
    base: Formula
    index: Formula


@dataclass(frozen=True)
class SetLiteral(Formula):
    elems: tuple[Formula, ...]


@dataclass(frozen=True)
class TupleLiteral(Formula):
    elems: tuple[Formula, ...]


@dataclass(frozen=True)
class Length(Formula):
    arg: Formula


@dataclass(frozen=True)
class Truth(Formula):
    pass


@dataclass(frozen=True)
class Falsehood(Formula):
    pass


TRUE = Truth()
FALSE = Falsehood()


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    # at least two items after parsing; nested Ands are distinct terms
    items: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    items: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Iff(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class DefIff(Formula):
    """Definitional equivalence, written  lhs :<=> rhs."""

    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class DefEq(Formula):
    """Definitional equation, written  lhs := rhs."""

    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Comparison(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Eq(Comparison):
    pass


@dataclass(frozen=True)
class Neq(Comparison):
    pass


@dataclass(frozen=True)
class Le(Comparison):
    pass


@dataclass(frozen=True)
class Lt(Comparison):
    pass


@dataclass(frozen=True)
class Ge(Comparison):
    pass


@dataclass(frozen=True)
class Gt(Comparison):
    pass


@dataclass(frozen=True)
class In(Comparison):
    pass


@dataclass(frozen=True)
class Binder:
    """Variable list of a quantifier, with optional side condition and
    optional integer range lo..hi.  A range binder binds exactly one
    variable; the parser enforces that."""

    variables: tuple[str, ...]
    condition: Optional[Formula] = None
    bounds: Optional[tuple[Formula, Formula]] = None


@dataclass(frozen=True)
class Forall(Formula):
    binder: Binder
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    binder: Binder
    body: Formula


def _binder_parts(b: Binder) -> Iterator[Formula]:
    if b.condition is not None:
        yield b.condition
    if b.bounds is not None:
        yield b.bounds[0]
        yield b.bounds[1]


def children(f: Formula) -> tuple[Formula, ...]:
    """Immediate subterms in left-to-right order (binder parts first for
    quantifiers)."""
    match f:
        case App(head, args):
            return (head, *args)
        case Index(base, index):
            return (base, index)
        case SetLiteral(elems) | TupleLiteral(elems):
            return tuple(elems)
        case Length(arg):
            return (arg,)
        case Not(body):
            return (body,)
        case And(items) | Or(items):
            return tuple(items)
        case Implies(a, b) | Iff(a, b) | DefIff(a, b) | DefEq(a, b):
            return (a, b)
        case Comparison(a, b):
            return (a, b)
        case Forall(binder, body) | Exists(binder, body):
            return (*_binder_parts(binder), body)
        case _:
            return ()


def free_variables(f: Formula) -> frozenset[str]:
    """Names occurring free in ``f``.  A binder's variables are not free
    in its body, its condition, or its range."""
    match f:
        case Var(name):
            return frozenset((name,))
        case Forall(binder, body) | Exists(binder, body):
            inner: frozenset[str] = free_variables(body)
            for part in _binder_parts(binder):
                inner |= free_variables(part)
            return inner - frozenset(binder.variables)
        case _:
            out: frozenset[str] = frozenset()
            for c in children(f):
                out |= free_variables(c)
            return out


def collect_names(f: Formula) -> frozenset[str]:
    """Every variable, constant, and binder name occurring anywhere."""
    match f:
        case Var(name) | Const(name):
            return frozenset((name,))
        case Forall(binder, _) | Exists(binder, _):
            out = frozenset(binder.variables)
        case _:
            out = frozenset()
    for c in children(f):
        out |= collect_names(c)
    return out


def fresh_name(base: str, avoid: frozenset[str] | set[str]) -> str:
    """``base`` itself if unused, else base1, base2, ... (smallest
    positive suffix not in ``avoid``)."""
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def _rebuild(f: Formula, new_children: tuple[Formula, ...]) -> Formula:
    match f:
        case App():
            return App(new_children[0], tuple(new_children[1:]))
        case Index():
            return Index(new_children[0], new_children[1])
        case SetLiteral():
            return SetLiteral(new_children)
        case TupleLiteral():
            return TupleLiteral(new_children)
        case Length():
            return Length(new_children[0])
        case Not():
            return Not(new_children[0])
        case And():
            return And(new_children)
        case Or():
            return Or(new_children)
        case Implies():
            return Implies(new_children[0], new_children[1])
        case Iff():
            return Iff(new_children[0], new_children[1])
        case DefIff():
            return DefIff(new_children[0], new_children[1])
        case DefEq():
            return DefEq(new_children[0], new_children[1])
        case Eq():
            return Eq(new_children[0], new_children[1])
        case Neq():
            return Neq(new_children[0], new_children[1])
        case Le():
            return Le(new_children[0], new_children[1])
        case Lt():
            return Lt(new_children[0], new_children[1])
        case Ge():
            return Ge(new_children[0], new_children[1])
        case Gt():
            return Gt(new_children[0], new_children[1])
        case In():
            return In(new_children[0], new_children[1])
        case _:
            raise TypeError(f"cannot rebuild {type(f).__name__}")


def substitute(f: Formula, mapping: dict[str, Formula]) -> Formula:
    """Replace free occurrences of variables, renaming binders when a
    replacement would be captured."""
    if not mapping:
        return f
    match f:
        case Var(name):
            return mapping.get(name, f)
        case Forall(binder, body) | Exists(binder, body):
            quant = Forall if isinstance(f, Forall) else Exists
            bound = set(binder.variables)
            inner_free = free_variables(f)
            live = {k: v for k, v in mapping.items()
                    if k not in bound and k in inner_free}
            if not live:
                return f
            clash = [v for v in binder.variables
                     if any(v in free_variables(r) for r in live.values())]
            variables = binder.variables
            condition = binder.condition
            bounds = binder.bounds
            if clash:
                avoid = set(free_variables(body))
                for part in _binder_parts(binder):
                    avoid |= free_variables(part)
                for r in live.values():
                    avoid |= free_variables(r)
                avoid |= set(live)
                avoid |= bound
                rename: dict[str, Formula] = {}
                new_vars = []
                for v in variables:
                    if v in clash:
                        nv = fresh_name(v, avoid)
                        avoid.add(nv)
                        rename[v] = Var(nv)
                        new_vars.append(nv)
                    else:
                        new_vars.append(v)
                variables = tuple(new_vars)
                if condition is not None:
                    condition = substitute(condition, rename)
                if bounds is not None:
                    bounds = (substitute(bounds[0], rename),
                              substitute(bounds[1], rename))
                body = substitute(body, rename)
            if condition is not None:
                condition = substitute(condition, live)
            if bounds is not None:
                bounds = (substitute(bounds[0], live),
                          substitute(bounds[1], live))
            return quant(Binder(variables, condition, bounds),
                         substitute(body, live))
        case Const() | Integer() | Rational() | Truth() | Falsehood():
            return f
        case _:
            kids = children(f)
            new_kids = tuple(substitute(c, mapping) for c in kids)
            if all(a is b for a, b in zip(kids, new_kids)):
                return f
            return _rebuild(f, new_kids)


def alpha_equal(f1: Formula, f2: Formula) -> bool:
    """Structural equality up to consistent renaming of bound variables."""

    def walk(a: Formula, b: Formula,
             env1: dict[str, str], env2: dict[str, str]) -> bool:
        if type(a) is not type(b):
            return False
        match a, b:
            case Var(n1), Var(n2):
                return env1.get(n1, n1) == env2.get(n2, n2)
            case (Forall(b1, body1), Forall(b2, body2)) | \
                 (Exists(b1, body1), Exists(b2, body2)):
                if len(b1.variables) != len(b2.variables):
                    return False
                if (b1.condition is None) != (b2.condition is None):
                    return False
                if (b1.bounds is None) != (b2.bounds is None):
                    return False
                e1, e2 = dict(env1), dict(env2)
                for i, (v1, v2) in enumerate(zip(b1.variables, b2.variables)):
                    canon = f"#{len(env1)}.{i}"
                    e1[v1] = canon
                    e2[v2] = canon
                if b1.condition is not None:
                    if not walk(b1.condition, b2.condition, e1, e2):
                        return False
                if b1.bounds is not None:
                    if not walk(b1.bounds[0], b2.bounds[0], e1, e2):
                        return False
                    if not walk(b1.bounds[1], b2.bounds[1], e1, e2):
                        return False
                return walk(body1, body2, e1, e2)
            case _:
                ka, kb = children(a), children(b)
                if len(ka) != len(kb):
                    return False
                if isinstance(a, (Const, Integer, Rational)) and a != b:
                    return False
                return all(walk(x, y, env1, env2) for x, y in zip(ka, kb))

    return walk(f1, f2, {}, {})


def subterms(f: Formula) -> Iterator[Formula]:
    """Pre-order iteration over all subterms, ``f`` first."""
    yield f
    for c in children(f):
        yield from subterms(c)


# --- JSON form -------------------------------------------------------------
#
# Prefix form used by archives and the service: every node is
# ["Tag", field...], with binders as {"vars": [...], "cond": ..., "lo": ...,
# "hi": ...}.

class FormulaJsonError(Exception):
    pass


def to_jsonable(f: Formula):
    match f:
        case Const(name):
            return ["Const", name]
        case Var(name):
            return ["Var", name]
        case Integer(value):
            return ["Integer", value]
        case Rational(num, den):
            return ["Rational", num, den]
        case Truth():
            return ["True"]
        case Falsehood():
            return ["False"]
        case App(head, args):
            return ["App", to_jsonable(head), [to_jsonable(a) for a in args]]
        case Index(base, index):
            return ["Index", to_jsonable(base), to_jsonable(index)]
        case SetLiteral(elems):
            return ["Set", [to_jsonable(e) for e in elems]]
        case TupleLiteral(elems):
            return ["Tuple", [to_jsonable(e) for e in elems]]
        case Length(arg):
            return ["Length", to_jsonable(arg)]
        case Not(body):
            return ["Not", to_jsonable(body)]
        case And(items):
            return ["And", [to_jsonable(i) for i in items]]
        case Or(items):
            return ["Or", [to_jsonable(i) for i in items]]
        case Implies(a, b):
            return ["Implies", to_jsonable(a), to_jsonable(b)]
        case Iff(a, b):
            return ["Iff", to_jsonable(a), to_jsonable(b)]
        case DefIff(a, b):
            return ["DefIff", to_jsonable(a), to_jsonable(b)]
        case DefEq(a, b):
            return ["DefEq", to_jsonable(a), to_jsonable(b)]
        case Eq(a, b):
            return ["Eq", to_jsonable(a), to_jsonable(b)]
        case Neq(a, b):
            return ["Neq", to_jsonable(a), to_jsonable(b)]
        case Le(a, b):
            return ["Le", to_jsonable(a), to_jsonable(b)]
        case Lt(a, b):
            return ["Lt", to_jsonable(a), to_jsonable(b)]
        case Ge(a, b):
            return ["Ge", to_jsonable(a), to_jsonable(b)]
        case Gt(a, b):
            return ["Gt", to_jsonable(a), to_jsonable(b)]
        case In(a, b):
            return ["In", to_jsonable(a), to_jsonable(b)]
        case Forall(binder, body):
            return ["Forall", _binder_json(binder), to_jsonable(body)]
        case Exists(binder, body):
            return ["Exists", _binder_json(binder), to_jsonable(body)]
        case _:
            raise FormulaJsonError(f"unserializable node {type(f).__name__}")


def _binder_json(b: Binder) -> dict:
    out: dict = {"vars": list(b.variables)}
    if b.condition is not None:
        out["cond"] = to_jsonable(b.condition)
    if b.bounds is not None:
        out["lo"] = to_jsonable(b.bounds[0])
        out["hi"] = to_jsonable(b.bounds[1])
    return out


_BINARY = {"Implies": Implies, "Iff": Iff, "DefIff": DefIff, "DefEq": DefEq,
           "Eq": Eq, "Neq": Neq, "Le": Le, "Lt": Lt, "Ge": Ge, "Gt": Gt,
           "In": In, "Index": Index}


def from_jsonable(data) -> Formula:
    if not isinstance(data, list) or not data or not isinstance(data[0], str):
        raise FormulaJsonError(f"bad node: {data!r}")
    tag, *rest = data
    try:
        if tag == "Const":
            return Const(rest[0])
        if tag == "Var":
            return Var(rest[0])
        if tag == "Integer":
            return Integer(int(rest[0]))
        if tag == "Rational":
            return Rational(int(rest[0]), int(rest[1]))
        if tag == "True":
            return TRUE
        if tag == "False":
            return FALSE
        if tag == "App":
            return App(from_jsonable(rest[0]),
                       tuple(from_jsonable(a) for a in rest[1]))
        if tag == "Set":
            return SetLiteral(tuple(from_jsonable(e) for e in rest[0]))
        if tag == "Tuple":
            return TupleLiteral(tuple(from_jsonable(e) for e in rest[0]))
        if tag == "Length":
            return Length(from_jsonable(rest[0]))
        if tag == "Not":
            return Not(from_jsonable(rest[0]))
        if tag == "And":
            return And(tuple(from_jsonable(i) for i in rest[0]))
        if tag == "Or":
            return Or(tuple(from_jsonable(i) for i in rest[0]))
        if tag in _BINARY:
            return _BINARY[tag](from_jsonable(rest[0]), from_jsonable(rest[1]))
        if tag in ("Forall", "Exists"):
            b = _binder_from_json(rest[0])
            body = from_jsonable(rest[1])
            return Forall(b, body) if tag == "Forall" else Exists(b, body)
    except FormulaJsonError:
        raise
    except (IndexError, TypeError, ValueError) as exc:
        raise FormulaJsonError(f"bad node: {data!r}") from exc
    raise FormulaJsonError(f"unknown tag {tag!r}")


def _binder_from_json(data) -> Binder:
    if not isinstance(data, dict) or "vars" not in data:
        raise FormulaJsonError(f"bad binder: {data!r}")
    cond = from_jsonable(data["cond"]) if "cond" in data else None
    bounds = None
    if "lo" in data or "hi" in data:
        bounds = (from_jsonable(data["lo"]), from_jsonable(data["hi"]))
    return Binder(tuple(data["vars"]), cond, bounds)


def term_sort_key(f: Formula):
    """Deterministic total order on terms, used when built-in set
    simplification needs a canonical element order."""
    j = to_jsonable(f)

    def enc(x):
        if isinstance(x, list):
            return (0, tuple(enc(i) for i in x))
        if isinstance(x, bool):
            return (1, int(x))
        if isinstance(x, int):
            return (2, x)
        if isinstance(x, str):
            return (3, x)
        if isinstance(x, dict):
            return (4, tuple((k, enc(v)) for k, v in sorted(x.items())))
        return (5, repr(x))

    return enc(j)
