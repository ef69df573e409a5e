import pytest

from tma.formulas import (
    FALSE, TRUE, And, App, Binder, Const, DefEq, DefIff, Eq, Exists, Forall,
    Ge, Iff, Implies, In, Index, Integer, Le, Length, Not, Or, Rational,
    SetLiteral, TupleLiteral, Var,
)
from tma.declarations import (
    DeclSequence, ImplicationDecl, LetDecl, QuantifierDecl,
)
from tma.parser import ParseError, parse_declaration, parse_formula
from tma.printer import format_formula

from corpus import CORPUS


def test_application_heads_become_constants():
    assert parse_formula("f[x]") == App(Const("f"), (Var("x"),))


def test_plain_identifiers_are_variables():
    assert parse_formula("x") == Var("x")


def test_plus_parses_to_application():
    assert parse_formula("1+1") == App(Const("plus"),
                                       (Integer(1), Integer(1)))


def test_plus_chain_flattens():
    assert parse_formula("1 + 2 + 3") == App(
        Const("plus"), (Integer(1), Integer(2), Integer(3)))
    # explicit grouping is preserved
    assert parse_formula("(1 + 2) + 3") == App(
        Const("plus"),
        (App(Const("plus"), (Integer(1), Integer(2))), Integer(3)))


def test_and_chain_flattens():
    f = parse_formula("p and q and r")
    assert f == And((Var("p"), Var("q"), Var("r")))
    g = parse_formula("(p and q) and r")
    assert g == And((And((Var("p"), Var("q"))), Var("r")))


def test_connective_precedence():
    f = parse_formula("not a and b or c => d")
    assert f == Implies(
        Or((And((Not(Var("a")), Var("b"))), Var("c"))), Var("d"))


def test_implication_is_right_associative():
    assert parse_formula("a => b => c") == Implies(
        Var("a"), Implies(Var("b"), Var("c")))


def test_index_binds_tighter_than_application_args():
    assert parse_formula("b_j") == Index(Var("b"), Var("j"))
    assert parse_formula("b_j[x]") == App(
        Index(Var("b"), Var("j")), (Var("x"),))


def test_index_needs_atom_or_parens():
    assert parse_formula("b_(j + 1)") == Index(
        Var("b"), App(Const("plus"), (Var("j"), Integer(1))))
    with pytest.raises(ParseError):
        parse_formula("b_{1}")


def test_length_bars():
    assert parse_formula("|b|") == Length(Var("b"))
    assert parse_formula("|b| = |v|") == Eq(Length(Var("b")),
                                            Length(Var("v")))


def test_length_does_not_nest_without_parens():
    with pytest.raises(ParseError):
        parse_formula("||a||")
    assert parse_formula("|(|a|)|") == Length(Length(Var("a")))


def test_set_and_tuple_literals():
    assert parse_formula("{1, 2}") == SetLiteral((Integer(1), Integer(2)))
    assert parse_formula("tuple[1, 2]") == TupleLiteral(
        (Integer(1), Integer(2)))
    assert parse_formula("⟨1, 2⟩") == TupleLiteral(
        (Integer(1), Integer(2)))
    assert parse_formula("{}") == SetLiteral(())


def test_rational_literals_normalize():
    assert parse_formula("3/4") == Rational(3, 4)
    assert parse_formula("6/4") == Rational(3, 2)
    assert parse_formula("-1/2") == Rational(-1, 2)
    # zero denominator stays symbolic
    assert parse_formula("3/0") == App(Const("divide"),
                                       (Integer(3), Integer(0)))


def test_truth_literals():
    assert parse_formula("True") == TRUE
    assert parse_formula("False") == FALSE


def test_quantifier_bracket_form():
    f = parse_formula("forall[x, p[x]]")
    assert f == Forall(Binder(("x",)), App(Const("p"), (Var("x"),)))


def test_quantifier_with_condition():
    f = parse_formula("forall[x with p[x], q[x]]")
    assert f.binder.condition == App(Const("p"), (Var("x"),))


def test_quantifier_range():
    f = parse_formula("forall[j = 1..|b|, b_j >= 0]")
    assert f == Forall(
        Binder(("j",), None, (Integer(1), Length(Var("b")))),
        Ge(Index(Var("b"), Var("j")), Integer(0)))


def test_range_binds_exactly_one_variable():
    with pytest.raises(ParseError):
        parse_formula("forall[{x, y} = 1..5, p[x]]")


def test_multi_variable_binder():
    f = parse_formula("forall[{x, y}, p[x, y]]")
    assert f.binder.variables == ("x", "y")


def test_sugar_and_bracket_forms_agree():
    assert parse_formula("∀ x with p[x] : q[x]") == \
        parse_formula("forall[x with p[x], q[x]]")
    assert parse_formula("∃ x : p[x]") == \
        parse_formula("exists[x, p[x]]")
    assert parse_formula("∀ x, y : p[x, y]") == \
        parse_formula("forall[{x, y}, p[x, y]]")


def test_sugar_body_extends_right():
    f = parse_formula("∀ b : bids[b] :⟺ ∀ j = 1..|b| : b_j ≥ 0")
    assert isinstance(f, Forall)
    assert isinstance(f.body, DefIff)
    assert f == parse_formula(
        "forall[b, bids[b] :<=> forall[j = 1..|b|, b_j >= 0]]")


def test_definition_example():
    f = parse_formula("bids[b] :<=> forall[j = 1..|b|, b_j >= 0]")
    assert f == DefIff(
        App(Const("bids"), (Var("b"),)),
        Forall(Binder(("j",), None, (Integer(1), Length(Var("b")))),
               Ge(Index(Var("b"), Var("j")), Integer(0))))


def test_def_eq():
    assert parse_formula("double[x] := 2 * x") == DefEq(
        App(Const("double"), (Var("x"),)),
        App(Const("times"), (Integer(2), Var("x"))))


def test_iff_vs_def_iff():
    f = parse_formula("a <=> b")
    assert isinstance(f, Iff)
    g = parse_formula("a :<=> b")
    assert isinstance(g, DefIff)


def test_in_relation():
    assert parse_formula("x in {1}") == In(Var("x"),
                                           SetLiteral((Integer(1),)))


def test_parse_errors_carry_spans():
    with pytest.raises(ParseError) as err:
        parse_formula("f[")
    assert err.value.span[0] >= 2
    with pytest.raises(ParseError):
        parse_formula("")
    with pytest.raises(ParseError):
        parse_formula("x +")
    with pytest.raises(ParseError):
        parse_formula("x y")


def test_unbalanced_length_bar():
    with pytest.raises(ParseError):
        parse_formula("|x")


# --- declarations ---------------------------------------------------------

def test_orphaned_quantifier_declaration():
    d = parse_declaration("forall[{b, x, p, v}]")
    assert d == QuantifierDecl(Binder(("b", "x", "p", "v")))


def test_declaration_conditions_conjoin():
    d = parse_declaration("forall[b with bids[b], |b| = |v|]")
    assert isinstance(d, QuantifierDecl)
    assert d.binder.condition == And((
        App(Const("bids"), (Var("b"),)),
        Eq(Length(Var("b")), Length(Var("v")))))


def test_orphaned_implication_declaration():
    d = parse_declaration("secondPriceAuction[b, x, p] =>")
    assert d == ImplicationDecl(
        App(Const("secondPriceAuction"), (Var("b"), Var("x"), Var("p"))))


def test_let_declaration():
    d = parse_declaration("let n = |v|")
    assert d == LetDecl("n", Length(Var("v")))


def test_declaration_sequence():
    text = ("forall[v with valuation[v]] "
            "forall[b with bids[b], |b| = |v|] "
            "forall[x with allocation[b, x]] "
            "forall[p with vickreyPayment[b, p]] "
            "let n = |v|")
    d = parse_declaration(text)
    assert isinstance(d, DeclSequence)
    assert len(d.items) == 5
    assert [type(i).__name__ for i in d.items] == \
        ["QuantifierDecl"] * 4 + ["LetDecl"]
    assert d.items[0].binder.variables == ("v",)
    assert d.items[4] == LetDecl("n", Length(Var("v")))


def test_declaration_rejects_plain_formula():
    with pytest.raises(ParseError):
        parse_declaration("p and q")


# --- round trips ----------------------------------------------------------

@pytest.mark.parametrize("text", CORPUS)
def test_corpus_round_trips_both_styles(text):
    ast = parse_formula(text)
    for style in ("ascii", "unicode"):
        rendered = format_formula(ast, style)
        assert parse_formula(rendered) == ast, (text, style, rendered)


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 50


def test_format_example():
    f = parse_formula("forall[b, bids[b] :<=> forall[j = 1..|b|, b_j >= 0]]")
    assert format_formula(f, "unicode") == \
        "∀ b : bids[b] :⟺ ∀ j = 1..|b| : b_j ≥ 0"
