"""Render formula terms back to 1D text.

Two styles: ``ascii`` (bracketed quantifiers, word connectives) and
``unicode`` (symbol connectives, sugared quantifiers).  Output of either
style reparses to a structurally equal term.
"""

from __future__ import annotations

from .formulas import (
    And, App, Binder, Comparison, Const, DefEq, DefIff, Eq, Exists, Falsehood,
    Forall, Formula, Ge, Gt, Iff, Implies, In, Index, Integer, Le, Length, Lt,
    Neq, Not, Or, Rational, SetLiteral, TupleLiteral, Truth, Var,
)

DEF, IFF, IMPL, OR, AND, NOT, REL, ADD, MUL, POW, UNARY, POSTFIX, ATOM = \
    range(13)

_REL_ASCII = {Eq: "=", Neq: "!=", Le: "<=", Lt: "<", Ge: ">=", Gt: ">",
              In: "in"}
_REL_UNICODE = {Eq: "=", Neq: "≠", Le: "≤", Lt: "<",
                Ge: "≥", Gt: ">", In: "∈"}


def _is_chain(f: Formula, op: str) -> bool:
    match f:
        case App(Const(name), args) if name == op and len(args) >= 2:
            return True
        case _:
            return False


def _level(f: Formula) -> int:
    match f:
        case DefIff() | DefEq():
            return DEF
        case Iff():
            return IFF
        case Implies():
            return IMPL
        case Or():
            return OR
        case And():
            return AND
        case Not():
            return NOT
        case Comparison():
            return REL
        case App(Const("plus"), args) if len(args) >= 2:
            return ADD
        case App(Const("minus"), args) if len(args) == 2:
            return ADD
        case App(Const("minus"), args) if len(args) == 1:
            return UNARY
        case App(Const("times"), args) if len(args) >= 2:
            return MUL
        case App(Const("divide"), args) if len(args) == 2:
            return MUL
        case App(Const("power"), args) if len(args) == 2:
            return POW
        case Rational():
            return MUL
        case Integer(v) if v < 0:
            return UNARY
        case App() | Index():
            return POSTFIX
        case Forall() | Exists():
            return DEF  # sugared form is as loose as it gets
        case _:
            return ATOM


class _Printer:
    def __init__(self, style: str):
        if style not in ("ascii", "unicode"):
            raise ValueError(f"unknown style {style!r}")
        self.style = style
        self.uni = style == "unicode"

    def at(self, f: Formula, required: int, in_bar: bool) -> str:
        lvl = _level(f)
        if not self.uni and isinstance(f, (Forall, Exists)):
            lvl = ATOM  # bracketed form encloses itself
        need = lvl < required
        if in_bar and isinstance(f, Length):
            need = True
        if need:
            return "(" + self.render(f, False) + ")"
        return self.render(f, in_bar)

    def seq(self, items, required: int, in_bar: bool, sep: str) -> str:
        return sep.join(self.at(i, required, in_bar) for i in items)

    def render(self, f: Formula, in_bar: bool) -> str:
        match f:
            case Var(name) | Const(name):
                return name
            case Integer(v):
                return str(v)
            case Rational(n, d):
                return f"{n}/{d}"
            case Truth():
                return "True"
            case Falsehood():
                return "False"
            case DefIff(a, b):
                op = ":⟺" if self.uni else ":<=>"
                return f"{self.at(a, IFF, in_bar)} {op} {self.at(b, DEF, in_bar)}"
            case DefEq(a, b):
                return f"{self.at(a, IFF, in_bar)} := {self.at(b, DEF, in_bar)}"
            case Iff(a, b):
                op = "⇔" if self.uni else "<=>"
                return f"{self.at(a, IMPL, in_bar)} {op} {self.at(b, IFF, in_bar)}"
            case Implies(a, b):
                op = "⇒" if self.uni else "=>"
                return f"{self.at(a, OR, in_bar)} {op} {self.at(b, IMPL, in_bar)}"
            case Or(items):
                op = " ∨ " if self.uni else " or "
                return self.seq(items, AND, in_bar, op)
            case And(items):
                op = " ∧ " if self.uni else " and "
                return self.seq(items, NOT, in_bar, op)
            case Not(body):
                if self.uni:
                    return "¬" + self.at(body, NOT, in_bar)
                return "not " + self.at(body, NOT, in_bar)
            case Comparison(a, b):
                ops = _REL_UNICODE if self.uni else _REL_ASCII
                op = ops[type(f)]
                return f"{self.at(a, ADD, in_bar)} {op} {self.at(b, ADD, in_bar)}"
            case App(Const("plus"), args) if len(args) >= 2:
                # a plus chain in first position would re-flatten
                first = self.at(args[0], MUL if _is_chain(args[0], "plus")
                                else ADD, in_bar)
                rest = self.seq(args[1:], MUL, in_bar, " + ")
                return f"{first} + {rest}"
            case App(Const("minus"), (a, b)):
                return f"{self.at(a, ADD, in_bar)} - {self.at(b, MUL, in_bar)}"
            case App(Const("minus"), (a,)):
                if isinstance(a, Integer) and a.value >= 0:
                    return f"-({a.value})"  # distinct from a negative literal
                return "-" + self.at(a, UNARY, in_bar)
            case App(Const("times"), args) if len(args) >= 2:
                first = self.at(args[0], POW if _is_chain(args[0], "times")
                                else MUL, in_bar)
                rest = self.seq(args[1:], POW, in_bar, " * ")
                return f"{first} * {rest}"
            case App(Const("divide"), (a, b)):
                return f"{self.at(a, MUL, in_bar)} / {self.at(b, POW, in_bar)}"
            case App(Const("power"), (a, b)):
                return f"{self.at(a, UNARY, in_bar)} ^ {self.at(b, POW, in_bar)}"
            case App(head, args):
                if isinstance(head, Const):
                    h = head.name
                elif _level(head) >= POSTFIX:
                    h = self.render(head, False)
                else:
                    h = "(" + self.render(head, False) + ")"
                inner = self.seq(args, DEF, False, ", ")
                return f"{h}[{inner}]"
            case Index(base, index):
                b = self.at(base, POSTFIX, in_bar)
                match index:
                    case Var(n) | Const(n):
                        return f"{b}_{n}"
                    case Integer(v) if v >= 0:
                        return f"{b}_{v}"
                    case _:
                        return f"{b}_({self.render(index, False)})"
            case Length(arg):
                return "|" + self.at(arg, DEF, True) + "|"
            case SetLiteral(elems):
                return "{" + self.seq(elems, DEF, False, ", ") + "}"
            case TupleLiteral(elems):
                inner = self.seq(elems, DEF, False, ", ")
                if self.uni:
                    return "⟨" + inner + "⟩"
                return f"tuple[{inner}]"
            case Forall() | Exists():
                return self.quantifier(f, in_bar)
            case _:
                raise ValueError(f"cannot render {type(f).__name__}")

    def quantifier(self, f, in_bar: bool) -> str:
        sym_uni = "∀" if isinstance(f, Forall) else "∃"
        word = "forall" if isinstance(f, Forall) else "exists"
        b: Binder = f.binder
        if self.uni:
            head = sym_uni + " " + self.binder_text(b, in_bar)
            return f"{head} : {self.at(f.body, DEF, in_bar)}"
        head = word + "[" + self.binder_text(b, False)
        return f"{head}, {self.at(f.body, DEF, False)}]"

    def binder_text(self, b: Binder, in_bar: bool) -> str:
        if len(b.variables) == 1:
            out = b.variables[0]
        elif self.uni:
            out = ", ".join(b.variables)
        else:
            out = "{" + ", ".join(b.variables) + "}"
        if b.bounds is not None:
            lo = self.at(b.bounds[0], ADD, in_bar)
            hi = self.at(b.bounds[1], ADD, in_bar)
            out += f" = {lo}..{hi}"
        if b.condition is not None:
            out += " with " + self.at(b.condition, DEF, in_bar)
        return out


def format_formula(f: Formula, style: str = "unicode") -> str:
    return _Printer(style).render(f, False)


def format_declaration(decl, style: str = "unicode") -> str:
    """Source-shaped text for a global declaration."""
    from .declarations import (
        DeclSequence, ImplicationDecl, LetDecl, QuantifierDecl,
    )

    p = _Printer(style)
    match decl:
        case QuantifierDecl(binder):
            if style == "unicode":
                return "∀ " + p.binder_text(binder, False)
            return "forall[" + p.binder_text(binder, False) + "]"
        case ImplicationDecl(lhs):
            arrow = "⇒" if style == "unicode" else "=>"
            return p.at(lhs, DEF, False) + " " + arrow
        case LetDecl(name, replacement):
            return f"let {name} = " + p.at(replacement, DEF, False)
        case DeclSequence(items):
            return "  ".join(format_declaration(i, style) for i in items)
    raise ValueError(f"not a declaration: {type(decl).__name__}")
