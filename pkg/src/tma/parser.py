"""Recursive-descent parser for the 1D formula syntax.

Grammar, loosest binding first::

    def      :=  iff ( (":<=>" | ":=") def )?
    iff      :=  impl ( "<=>" iff )?
    impl     :=  or ( "=>" impl )?
    or       :=  and ( "or" and )*          -- n-ary, chain flattened
    and      :=  not ( "and" not )*         -- n-ary, chain flattened
    not      :=  "not" not | rel
    rel      :=  add ( relop add )?         -- = != <= < >= > in
    add      :=  mul ( ("+" | "-") mul )*   -- "+" chains flatten
    mul      :=  pow ( ("*" | "/") pow )*   -- "*" chains flatten
    pow      :=  unary ( "^" pow )?
    unary    :=  "-" unary | postfix
    postfix  :=  primary ( "[" args "]" | "_" indexatom )*
    primary  :=  ident | integer | "True" | "False" | "(" def ")"
              |  "|" def "|" | "{" elems "}" | "⟨" elems "⟩"
              |  "tuple" "[" elems "]" | quantifier

Quantifiers come in a bracket form  forall[x with cond, body]  and a
sugared form  ∀ x with cond : body  whose body extends as far to the
right as possible.  Range binders are written  x = lo..hi  and bind one
variable.  Application heads that are plain identifiers become
constants; all other identifiers are variables.  A quotient of two
integer literals is read as a rational literal.
"""

from __future__ import annotations

from .lexer import LexError, Token, tokenize
from .formulas import (
    FALSE, TRUE, And, App, Binder, Const, DefEq, DefIff, Eq, Exists, Forall,
    Formula, Ge, Gt, Iff, Implies, In, Index, Integer, Le, Length, Lt, Neq,
    Not, Or, Rational, SetLiteral, TupleLiteral, Var,
)
from .declarations import (
    DeclSequence, GlobalDeclaration, ImplicationDecl, LetDecl, QuantifierDecl,
)


class ParseError(Exception):
    def __init__(self, message: str, span: tuple[int, int],
                 expected: tuple[str, ...] = ()):
        super().__init__(f"{message} at byte {span[0]}")
        self.message = message
        self.span = span
        self.expected = expected


_RELOPS = {"=": Eq, "!=": Neq, "<=": Le, "<": Lt, ">=": Ge, ">": Gt, "in": In}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.end_span = (len(text.encode("utf-8")),) * 2
        # inside |...| an unparenthesized "|" may only close, never open
        self.bar_blocked = False

    # --- token plumbing ---------------------------------------------------

    def peek(self) -> Token | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end_span)
        self.pos += 1
        return tok

    def at(self, kind: str, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind and tok.text == text

    def take(self, kind: str, text: str) -> bool:
        if self.at(kind, text):
            self.pos += 1
            return True
        return False

    def expect(self, kind: str, text: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {text!r}", self.end_span, (text,))
        if tok.kind != kind or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}",
                             tok.span, (text,))
        self.pos += 1
        return tok

    def fail(self, what: tuple[str, ...]):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end_span, what)
        raise ParseError(f"unexpected {tok.text!r}", tok.span, what)

    # --- formula levels ---------------------------------------------------

    def p_def(self) -> Formula:
        lhs = self.p_iff()
        if self.take("operator", ":<=>"):
            return DefIff(lhs, self.p_def())
        if self.take("operator", ":="):
            return DefEq(lhs, self.p_def())
        return lhs

    def p_iff(self) -> Formula:
        lhs = self.p_impl()
        if self.take("operator", "<=>"):
            return Iff(lhs, self.p_iff())
        return lhs

    def p_impl(self) -> Formula:
        lhs = self.p_or()
        if self.take("operator", "=>"):
            return Implies(lhs, self.p_impl())
        return lhs

    def p_or(self) -> Formula:
        items = [self.p_and()]
        while self.take("operator", "or"):
            items.append(self.p_and())
        if len(items) == 1:
            return items[0]
        return Or(tuple(items))

    def p_and(self) -> Formula:
        items = [self.p_not()]
        while self.take("operator", "and"):
            items.append(self.p_not())
        if len(items) == 1:
            return items[0]
        return And(tuple(items))

    def p_not(self) -> Formula:
        if self.take("operator", "not"):
            return Not(self.p_not())
        return self.p_rel()

    def p_rel(self) -> Formula:
        lhs = self.p_add()
        tok = self.peek()
        if tok is not None and tok.kind == "operator" and tok.text in _RELOPS:
            self.pos += 1
            rhs = self.p_add()
            return _RELOPS[tok.text](lhs, rhs)
        return lhs

    def p_add(self) -> Formula:
        acc = self.p_mul()
        plus_chain = False
        while True:
            if self.take("operator", "+"):
                rhs = self.p_mul()
                if plus_chain:
                    assert isinstance(acc, App)
                    acc = App(acc.head, acc.args + (rhs,))
                else:
                    acc = App(Const("plus"), (acc, rhs))
                    plus_chain = True
            elif self.take("operator", "-"):
                acc = App(Const("minus"), (acc, self.p_mul()))
                plus_chain = False
            else:
                return acc

    def p_mul(self) -> Formula:
        acc = self.p_pow()
        times_chain = False
        while True:
            if self.take("operator", "*"):
                rhs = self.p_pow()
                if times_chain:
                    assert isinstance(acc, App)
                    acc = App(acc.head, acc.args + (rhs,))
                else:
                    acc = App(Const("times"), (acc, rhs))
                    times_chain = True
            elif self.take("operator", "/"):
                rhs = self.p_pow()
                folded = _fold_rational(acc, rhs)
                acc = folded if folded is not None else \
                    App(Const("divide"), (acc, rhs))
                times_chain = False
            else:
                return acc

    def p_pow(self) -> Formula:
        base = self.p_unary()
        if self.take("operator", "^"):
            return App(Const("power"), (base, self.p_pow()))
        return base

    def p_unary(self) -> Formula:
        if self.take("operator", "-"):
            tok = self.peek()
            if tok is not None and tok.kind == "integer":
                self.pos += 1
                return Integer(-int(tok.text))
            return App(Const("minus"), (self.p_unary(),))
        return self.p_postfix()

    def p_postfix(self) -> Formula:
        node = self.p_primary()
        while True:
            if self.at("bracket", "["):
                args = self.bracketed_list("[", "]")
                if isinstance(node, Var):
                    node = Const(node.name)
                node = App(node, tuple(args))
            elif self.take("operator", "_"):
                node = Index(node, self.p_index_atom())
            else:
                return node

    def p_index_atom(self) -> Formula:
        tok = self.peek()
        if tok is None:
            self.fail(("index",))
        if tok.kind == "ident":
            self.pos += 1
            return Var(tok.text)
        if tok.kind == "integer":
            self.pos += 1
            return Integer(int(tok.text))
        if tok.kind == "bracket" and tok.text == "(":
            return self.parenthesized()
        self.fail(("identifier", "integer", "("))
        raise AssertionError

    def parenthesized(self) -> Formula:
        self.expect("bracket", "(")
        saved, self.bar_blocked = self.bar_blocked, False
        inner = self.p_def()
        self.bar_blocked = saved
        self.expect("bracket", ")")
        return inner

    def bracketed_list(self, open_: str, close: str) -> list[Formula]:
        self.expect("bracket", open_)
        saved, self.bar_blocked = self.bar_blocked, False
        items: list[Formula] = []
        if not self.at("bracket", close):
            items.append(self.p_def())
            while self.take("operator", ","):
                items.append(self.p_def())
        self.bar_blocked = saved
        self.expect("bracket", close)
        return items

    def p_primary(self) -> Formula:
        tok = self.peek()
        if tok is None:
            self.fail(("formula",))
        assert tok is not None
        if tok.kind == "ident":
            self.pos += 1
            return Var(tok.text)
        if tok.kind == "integer":
            self.pos += 1
            return Integer(int(tok.text))
        if tok.kind == "keyword":
            if tok.text == "True":
                self.pos += 1
                return TRUE
            if tok.text == "False":
                self.pos += 1
                return FALSE
            if tok.text == "tuple":
                self.pos += 1
                return TupleLiteral(tuple(self.bracketed_list("[", "]")))
            if tok.text in ("forall", "exists"):
                return self.p_quantifier()
        if tok.kind == "bracket":
            if tok.text == "(":
                return self.parenthesized()
            if tok.text == "{":
                return SetLiteral(tuple(self.bracketed_list("{", "}")))
            if tok.text == "⟨":
                return TupleLiteral(
                    tuple(self.bracketed_list("⟨", "⟩")))
        if tok.kind == "operator" and tok.text == "|":
            if self.bar_blocked:
                raise ParseError(
                    "'|...|' does not nest without parentheses", tok.span,
                    ("(",))
            self.pos += 1
            self.bar_blocked = True
            inner = self.p_def()
            self.bar_blocked = False
            self.expect("operator", "|")
            return Length(inner)
        self.fail(("formula",))
        raise AssertionError

    # --- quantifiers ------------------------------------------------------

    def p_quantifier(self) -> Formula:
        tok = self.next()
        cls = Forall if tok.text == "forall" else Exists
        if self.at("bracket", "["):
            self.expect("bracket", "[")
            saved, self.bar_blocked = self.bar_blocked, False
            binder = self.p_binder(sugar=False)
            self.expect("operator", ",")
            body = self.p_def()
            self.bar_blocked = saved
            self.expect("bracket", "]")
            return cls(binder, body)
        binder = self.p_binder(sugar=True)
        self.expect("operator", ":")
        return cls(binder, self.p_def())

    def p_binder(self, sugar: bool) -> Binder:
        variables: list[str] = []
        if self.take("bracket", "{"):
            variables.append(self.ident())
            while self.take("operator", ","):
                variables.append(self.ident())
            self.expect("bracket", "}")
        else:
            variables.append(self.ident())
            if sugar:
                # a comma may continue the variable list
                while self.at("operator", ","):
                    tok2 = self.tokens[self.pos + 1] \
                        if self.pos + 1 < len(self.tokens) else None
                    if tok2 is None or tok2.kind != "ident":
                        break
                    after = self.tokens[self.pos + 2] \
                        if self.pos + 2 < len(self.tokens) else None
                    if after is None or after.text not in (",", ":", "with", "="):
                        break
                    self.pos += 1
                    variables.append(self.ident())
        bounds = None
        if self.take("operator", "="):
            if len(variables) != 1:
                tok = self.tokens[self.pos - 1]
                raise ParseError("a range binds exactly one variable",
                                 tok.span)
            lo = self.p_add()
            self.expect("operator", "..")
            hi = self.p_add()
            bounds = (lo, hi)
        condition = None
        if self.take("keyword", "with"):
            condition = self.p_def()
        return Binder(tuple(variables), condition, bounds)

    def ident(self) -> str:
        tok = self.peek()
        if tok is None or tok.kind != "ident":
            self.fail(("identifier",))
        assert tok is not None
        self.pos += 1
        return tok.text

    # --- declarations -----------------------------------------------------

    def p_declaration(self) -> GlobalDeclaration:
        items: list = []
        while self.at("keyword", "forall"):
            self.pos += 1
            self.expect("bracket", "[")
            binder = self.p_decl_binder()
            self.expect("bracket", "]")
            items.append(QuantifierDecl(binder))
        if self.at("keyword", "let"):
            self.pos += 1
            name = self.ident()
            self.expect("operator", "=")
            items.append(LetDecl(name, self.p_def()))
        if not items:
            self.fail(("forall", "let", "an implication left-hand side"))
        if len(items) == 1:
            return items[0]
        return DeclSequence(tuple(items))

    def p_decl_binder(self) -> Binder:
        binder = self.p_binder(sugar=False)
        if binder.condition is not None:
            # further comma-separated conditions conjoin
            conds = [binder.condition]
            while self.take("operator", ","):
                conds.append(self.p_def())
            if len(conds) > 1:
                binder = Binder(binder.variables, And(tuple(conds)),
                                binder.bounds)
        return binder


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.p_def()
    tok = p.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok.text!r}", tok.span, ("end",))
    return f


def parse_declaration(text: str) -> GlobalDeclaration:
    p = _Parser(text)
    toks = p.tokens
    if toks and toks[-1].kind == "operator" and toks[-1].text == "=>":
        inner = _Parser("")
        inner.tokens = toks[:-1]
        inner.end_span = toks[-1].span
        lhs = inner.p_def()
        rest = inner.peek()
        if rest is not None:
            raise ParseError(f"trailing input {rest.text!r}", rest.span,
                             ("end",))
        return ImplicationDecl(lhs)
    decl = p.p_declaration()
    tok = p.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok.text!r}", tok.span, ("end",))
    return decl


def _fold_rational(lhs: Formula, rhs: Formula) -> Formula | None:
    """A quotient of integer literals is a rational literal (nonzero
    denominator only)."""
    match lhs, rhs:
        case (Integer(a), Integer(b)) if b != 0:
            return Rational(a, b)
        case _:
            return None
