"""Built-in simplification and the compute activity, checked against
the independent evaluator in semantics.py."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semantics import evaluate
from tma.computation import (
    BUILTIN_GROUPS, BUILTIN_MEMBERS, ComputeResult, StepLimitExceeded,
    builtin_simplify, compute, expand_builtin_selection, match_pattern,
)
from tma.formulas import (
    FALSE, TRUE, App, Const, Integer, Rational, SetLiteral, TupleLiteral,
    Var, free_variables,
)
from tma.parser import parse_formula
from tma.printer import format_formula

ALL = set(BUILTIN_GROUPS)


def simp(text, active=ALL):
    return builtin_simplify(parse_formula(text), active)


def test_group_table_consistent():
    for group, members in BUILTIN_GROUPS.items():
        for m in members:
            assert group in BUILTIN_MEMBERS[m]
    assert "sets.cardinality" in BUILTIN_GROUPS["arithmetic"]
    assert expand_builtin_selection({"logic"}) == \
        frozenset(m for m, gs in BUILTIN_MEMBERS.items() if "logic" in gs)


def test_arithmetic_folds():
    assert simp("1 + 2 + 3") == Integer(6)
    assert simp("2 * 3 * 4") == Integer(24)
    assert simp("10 - 4") == Integer(6)
    assert simp("2 ^ 10") == Integer(1024)
    assert simp("7 / 2 + 1/2") == Integer(4)
    assert simp("1/3 + 1/6") == Rational(1, 2)
    assert simp("|0 - 5|") == Integer(5)


def test_comparisons_fold_to_truth_values():
    assert simp("2 < 3") == TRUE
    assert simp("2 >= 3") == FALSE
    assert simp("1/2 = 2/4") == TRUE
    assert simp("2 != 2") == FALSE


def test_division_by_zero_left_symbolic_with_note():
    notes = []
    f = parse_formula("1 / 0")
    out = builtin_simplify(f, ALL, notes)
    assert out == f
    assert len(notes) == 1 and "zero" in notes[0]["message"]


def test_logic_folds():
    assert simp("p and True") == parse_formula("p")
    assert simp("p and False or q") == parse_formula("q")
    assert simp("not not p") == parse_formula("p")
    assert simp("False => p") == TRUE
    assert simp("p => False") == parse_formula("not p")
    assert simp("p <=> True") == parse_formula("p")
    assert simp("f[a] = f[a]") == TRUE


def test_reflexivity_holds_for_arbitrary_terms():
    assert simp("x + y = x + y") == TRUE
    assert simp("f[a] != f[a]") == FALSE


def test_set_operations():
    assert simp("2 in {1, 2, 3}") == TRUE
    assert simp("5 in {1, 2, 3}") == FALSE
    assert simp("|{1, 2, 2, 3}|") == Integer(3)
    assert simp("{3, 1, 2}") == simp("{1, 2, 3}")
    assert builtin_simplify(
        App(Const("union"), (parse_formula("{1, 2}"),
                             parse_formula("{2, 3}"))), ALL) == \
        simp("{1, 2, 3}")
    assert builtin_simplify(
        App(Const("intersection"), (parse_formula("{1, 2}"),
                                    parse_formula("{2, 3}"))), ALL) == \
        SetLiteral((Integer(2),))


def test_tuple_operations():
    assert simp("|⟨a, b, c⟩|") == Integer(3)
    assert simp("⟨a, b, c⟩_2") == parse_formula("b")
    notes = []
    f = parse_formula("⟨a, b⟩_9")
    assert builtin_simplify(f, ALL, notes) == f
    assert notes and "tuple" in notes[0]["message"]


def test_inactive_members_do_nothing():
    f = parse_formula("1 + 2")
    assert builtin_simplify(f, set()) == f
    assert builtin_simplify(f, {"logic"}) == f
    assert builtin_simplify(f, {"arithmetic.plus"}) == Integer(3)


def test_nested_fixpoint():
    assert simp("(1 + 1 = 2) and (2 in {1 + 1})") == TRUE
    assert simp("forall[x, x + 0 >= 1 - 1 + 0]") == \
        parse_formula("forall[x, x + 0 >= 0]")


def test_quantifier_bounds_and_conditions_simplified():
    got = simp("forall[j = 1..2 + 3, p[j]]")
    assert got == parse_formula("forall[j = 1..5, p[j]]")


GROUND = st.recursive(
    st.integers(-9, 9).map(Integer),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(
            lambda ab: App(Const("plus"), ab)),
        st.tuples(inner, inner).map(
            lambda ab: App(Const("times"), ab)),
        st.tuples(inner, inner).map(
            lambda ab: App(Const("minus"), ab)),
        st.lists(inner, min_size=1, max_size=3).map(
            lambda xs: TupleLiteral(tuple(xs))),
    ),
    max_leaves=12,
)


@settings(max_examples=200, deadline=None)
@given(GROUND)
def test_simplify_preserves_ground_value_and_is_idempotent(term):
    out = builtin_simplify(term, ALL)
    try:
        want = evaluate(term, {}, {}, [])
    except Exception:
        want = None
    if want is not None:
        got = evaluate(out, {}, {}, [])
        assert got == want
    assert builtin_simplify(out, ALL) == out


# --- pattern matching -----------------------------------------------------

def test_match_binds_variables_consistently():
    pat = parse_formula("f[x, x]")
    assert match_pattern(pat, parse_formula("f[a, a]"),
                         frozenset({"x"})) == {"x": parse_formula("a")}
    assert match_pattern(pat, parse_formula("f[a, b]"),
                         frozenset({"x"})) is None


def test_match_is_one_sided():
    pat = parse_formula("g[x]")
    subject = parse_formula("g[h[y]]")
    sigma = match_pattern(pat, subject, frozenset({"x"}))
    assert sigma == {"x": parse_formula("h[y]")}
    # non-pattern variables must agree literally
    assert match_pattern(parse_formula("g[y]"), subject, frozenset()) is None


# --- compute --------------------------------------------------------------

def kb(*texts):
    return [(str(i + 1), parse_formula(t)) for i, t in enumerate(texts)]


def test_compute_unfolds_definitions():
    knowledge = kb("forall[x, double[x] := x + x]")
    out = compute(parse_formula("double[4]"), knowledge, ALL)
    assert out.result == Integer(8)
    kinds = [s["kind"] for s in out.trace]
    assert "rewrite" in kinds and "simplify" in kinds


def test_compute_recursive_definition():
    # the base case must come first: rules are tried in list order
    knowledge = kb("fact[0] := 1",
                   "forall[n, fact[n] := n * fact[n - 1]]")
    out = compute(parse_formula("fact[3]"), knowledge, ALL)
    assert out.result == Integer(6)
    with pytest.raises(StepLimitExceeded):
        compute(parse_formula("fact[3]"), knowledge, ALL, step_limit=3)


def test_compute_without_builtins_leaves_arithmetic():
    knowledge = kb("forall[x, double[x] := x + x]")
    out = compute(parse_formula("double[4]"), knowledge, set())
    assert out.result == parse_formula("4 + 4")


def test_compute_orients_equations_left_to_right():
    knowledge = kb("forall[x, sq[x] = x * x]")
    out = compute(parse_formula("sq[3]"), knowledge, ALL)
    assert out.result == Integer(9)


def test_compute_step_limit_carries_partial():
    knowledge = kb("forall[x, loop[x] := loop[x + 1]]")
    with pytest.raises(StepLimitExceeded) as exc:
        compute(parse_formula("loop[0]"), knowledge, ALL, step_limit=7)
    assert exc.value.partial is not None
    assert len(exc.value.trace) == 7


def test_compute_no_rules_is_simplification():
    out = compute(parse_formula("2 + 2"), [], ALL)
    assert out.result == Integer(4)
    out2 = compute(parse_formula("p and q"), [], ALL)
    assert out2.result == parse_formula("p and q")
    assert out2.trace == []
