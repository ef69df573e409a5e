"""Session behavior: declaration scoping, elaboration, labels,
archives, and knowledge selections."""

import pytest

from tma.declarations import DeclSequence, ImplicationDecl, LetDecl, \
    QuantifierDecl
from tma.document import new_document
from tma.formulas import (
    Binder, DefIff, Forall, alpha_equal, free_variables,
)
from tma.parser import parse_formula
from tma.printer import format_formula
from tma.session import (
    DocumentNotOpen, FormulaKey, NotAFormulaCell, Session, UnknownUnit,
    apply_declarations,
)


def make_session():
    return Session()


def open_doc(session, path="/tmp/doc.tnb"):
    doc = new_document(path)
    session.open_document(doc)
    return doc


# --- elaboration fidelity -------------------------------------------------

def test_bids_definition_elaborates_to_single_quantifier():
    session = make_session()
    doc = open_doc(session)
    env = doc.insert_group(0, None, "environment", env_kind="Definition")
    doc.insert_cell(env, None, "declaration", "forall[{b, x, p, v}]")
    cid = doc.insert_cell(env, None, "formula",
                          "bids[b] :<=> forall[j = 1..|b|, b_j >= 0]")
    entry, warnings = session.submit_cell(doc.path, cid)
    assert warnings == []
    expected = parse_formula(
        "forall[b, bids[b] :<=> forall[j = 1..|b|, b_j >= 0]]")
    assert entry.formula == expected
    # only b is quantified, the other declared variables do not occur
    assert isinstance(entry.formula, Forall)
    assert entry.formula.binder.variables == ("b",)
    assert isinstance(entry.formula.body, DefIff)


def test_lemma_elaborates_with_full_section_context():
    session = make_session()
    doc = open_doc(session)
    section = doc.insert_group(0, None, "section", title="Vickrey")
    doc.insert_cell(
        section, None, "declaration",
        "forall[v with valuation[v]] "
        "forall[b with bids[b], |b| = |v|] "
        "forall[x with allocation[b, x]] "
        "forall[p with vickreyPayment[b, p]] "
        "let n = |v|")
    sub = doc.insert_group(section, None, "section",
                           title="Properties of second-price auctions")
    doc.insert_cell(sub, None, "declaration",
                    "secondPriceAuction[b, x, p] =>")
    lemma = doc.insert_group(sub, None, "environment", env_kind="Lemma")
    cid = doc.insert_cell(
        lemma, None, "formula",
        "forall[winner = 1..n with x_winner = 1, "
        "secondPriceAuctionWinner[b, x, p, winner]]")

    decls = session.declarations_at(doc.path, cid)
    assert len(decls) == 2
    assert isinstance(decls[0], DeclSequence)
    assert isinstance(decls[1], ImplicationDecl)

    entry, _ = session.submit_cell(doc.path, cid)
    expected = parse_formula(
        "forall[v with valuation[v], "
        "forall[b with bids[b] and |b| = |v|, "
        "forall[x with allocation[b, x], "
        "forall[p with vickreyPayment[b, p], "
        "secondPriceAuction[b, x, p] => "
        "forall[winner = 1..|v| with x_winner = 1, "
        "secondPriceAuctionWinner[b, x, p, winner]]]]]]")
    assert entry.formula == expected
    assert free_variables(entry.formula) == frozenset()
    assert format_formula(entry.formula, style="ascii") == \
        format_formula(expected, style="ascii")


def test_declaration_chain_cell_parses_to_sequence_of_five():
    session = make_session()
    doc = open_doc(session)
    doc.insert_cell(
        0, None, "declaration",
        "forall[v with valuation[v]] forall[b with bids[b], |b| = |v|] "
        "forall[x with allocation[b, x]] "
        "forall[p with vickreyPayment[b, p]] let n = |v|")
    cid = doc.insert_cell(0, None, "formula", "p[n]")
    decls = session.declarations_at(doc.path, cid)
    assert len(decls) == 1
    seq = decls[0]
    assert isinstance(seq, DeclSequence)
    kinds = [type(i) for i in seq.items]
    assert kinds == [QuantifierDecl] * 4 + [LetDecl]
    assert seq.origin is not None


# --- scoping --------------------------------------------------------------

def test_declaration_scope_ends_with_enclosing_group():
    session = make_session()
    doc = open_doc(session)
    sec = doc.insert_group(0, None, "section")
    doc.insert_cell(sec, None, "declaration", "forall[y]")
    inside = doc.insert_cell(sec, None, "formula", "q[y]")
    outside = doc.insert_cell(0, None, "formula", "q[y]")

    inside_entry, _ = session.submit_cell(doc.path, inside)
    outside_entry, _ = session.submit_cell(doc.path, outside)
    assert isinstance(inside_entry.formula, Forall)
    assert not isinstance(outside_entry.formula, Forall)


def test_declaration_applies_only_after_its_position():
    session = make_session()
    doc = open_doc(session)
    before = doc.insert_cell(0, None, "formula", "q[y]")
    doc.insert_cell(0, None, "declaration", "forall[y]")
    entry, _ = session.submit_cell(doc.path, before)
    assert not isinstance(entry.formula, Forall)


def test_declaration_reaches_into_nested_groups():
    session = make_session()
    doc = open_doc(session)
    doc.insert_cell(0, None, "declaration", "forall[y]")
    sec = doc.insert_group(0, None, "section")
    env = doc.insert_group(sec, None, "environment")
    cid = doc.insert_cell(env, None, "formula", "q[y]")
    entry, _ = session.submit_cell(doc.path, cid)
    assert isinstance(entry.formula, Forall)


def test_sibling_group_not_in_scope():
    session = make_session()
    doc = open_doc(session)
    sec1 = doc.insert_group(0, None, "section")
    doc.insert_cell(sec1, None, "declaration", "forall[y]")
    sec2 = doc.insert_group(0, None, "section")
    cid = doc.insert_cell(sec2, None, "formula", "q[y]")
    entry, _ = session.submit_cell(doc.path, cid)
    assert not isinstance(entry.formula, Forall)


def test_quantifier_declaration_skips_unused_variables():
    got = apply_declarations(
        parse_formula("p[x]"),
        [QuantifierDecl(Binder(("a", "x", "z"), None, None))])
    assert got == parse_formula("forall[x, p[x]]")


def test_unused_declaration_leaves_formula_alone():
    f = parse_formula("p[x]")
    assert apply_declarations(
        f, [QuantifierDecl(Binder(("w",), None, None))]) == f


def test_condition_variable_is_not_dropped():
    # y is not free in the body but the condition links it to x
    decl = QuantifierDecl(Binder(("x", "y"),
                                 parse_formula("related[x, y]"), None))
    got = apply_declarations(parse_formula("p[x]"), [decl])
    assert got == parse_formula("forall[{x, y} with related[x, y], p[x]]")


# --- labels and resubmission ----------------------------------------------

def test_auto_labels_count_up_per_document():
    session = make_session()
    doc = open_doc(session)
    a = doc.insert_cell(0, None, "formula", "p")
    b = doc.insert_cell(0, None, "formula", "q")
    ea, _ = session.submit_cell(doc.path, a)
    eb, _ = session.submit_cell(doc.path, b)
    assert (ea.label, eb.label) == ("1", "2")
    assert ea.auto_label and eb.auto_label


def test_user_label_wins_and_duplicate_warns():
    session = make_session()
    doc = open_doc(session)
    a = doc.insert_cell(0, None, "formula", "p", user_label="ax")
    b = doc.insert_cell(0, None, "formula", "q", user_label="ax")
    _, w1 = session.submit_cell(doc.path, a)
    _, w2 = session.submit_cell(doc.path, b)
    assert w1 == []
    assert [w.code for w in w2] == ["duplicate-label"]


def test_resubmission_replaces_in_place_and_keeps_label():
    session = make_session()
    doc = open_doc(session)
    a = doc.insert_cell(0, None, "formula", "p")
    b = doc.insert_cell(0, None, "formula", "q")
    session.submit_cell(doc.path, a)
    session.submit_cell(doc.path, b)
    doc.find_cell(a).text = "p and r"
    entry, _ = session.submit_cell(doc.path, a)
    assert entry.label == "1"
    assert entry.formula == parse_formula("p and r")
    keys = [e.key.cell_id for e in session.all_formulae()]
    assert keys == [a, b]  # order unchanged
    assert len(session.all_formulae()) == 2


def test_submit_rejects_non_formula_cells():
    session = make_session()
    doc = open_doc(session)
    cid = doc.insert_cell(0, None, "text", "prose")
    with pytest.raises(NotAFormulaCell):
        session.submit_cell(doc.path, cid)
    with pytest.raises(DocumentNotOpen):
        session.submit_cell("/nowhere.tnb", 1)


def test_submission_records_result_on_the_cell():
    session = make_session()
    doc = open_doc(session)
    doc.insert_cell(0, None, "declaration", "forall[y]")
    cid = doc.insert_cell(0, None, "formula", "q[y]")
    session.submit_cell(doc.path, cid)
    record = doc.find_cell(cid).record
    assert record["formula"] == "forall[y, q[y]]"


# --- archives -------------------------------------------------------------

def test_archive_round_trip(tmp_path):
    session = make_session()
    doc = open_doc(session)
    ids = [doc.insert_cell(0, None, "formula", t)
           for t in ("p => q", "forall[x, p[x]]", "1 + 1 = 2")]
    for cid in ids:
        session.submit_cell(doc.path, cid)
    path = str(tmp_path / "basics.tarch")
    session.save_archive(list(session.entries), path)

    fresh = make_session()
    loaded = fresh.load_archive(path)
    assert len(loaded) == 3
    for old, new in zip(session.all_formulae(), fresh.all_formulae()):
        assert new.key == old.key
        assert new.label == old.label
        assert alpha_equal(new.formula, old.formula)
    assert list(fresh.archives) == [path]


def test_archive_bad_version(tmp_path):
    from tma.document import FormatError, VersionMismatch
    p = tmp_path / "bad.tarch"
    p.write_text('{"version": 9, "entries": []}')
    with pytest.raises(VersionMismatch):
        make_session().load_archive(str(p))
    p.write_text('{"entries": []}')
    with pytest.raises(FormatError):
        make_session().load_archive(str(p))


# --- selections -----------------------------------------------------------

def selection_fixture():
    session = make_session()
    doc = open_doc(session)
    sec = doc.insert_group(0, None, "section")
    a = doc.insert_cell(sec, None, "formula", "p")
    b = doc.insert_cell(sec, None, "formula", "q")
    c = doc.insert_cell(0, None, "formula", "r")
    for cid in (a, b, c):
        session.submit_cell(doc.path, cid)
    return session, doc, sec, a, b, c


def test_group_selection_is_tri_state():
    session, doc, sec, a, b, c = selection_fixture()
    group_unit = {"kind": "group", "doc_path": doc.path, "group_id": sec}
    assert session.selection_state("prove", group_unit) == "none"
    session.set_selection("prove", FormulaKey(doc.path, a), True)
    assert session.selection_state("prove", group_unit) == "partial"
    session.set_selection("prove", group_unit, True)
    assert session.selection_state("prove", group_unit) == "all"
    assert len(session.selected_entries("prove")) == 2
    session.set_selection("prove", group_unit, False)
    assert session.selection_state("prove", group_unit) == "none"


def test_document_unit_covers_every_entry():
    session, doc, sec, a, b, c = selection_fixture()
    unit = {"kind": "document", "doc_path": doc.path}
    session.set_selection("compute", unit, True)
    assert session.selection_state("compute", unit) == "all"
    assert {e.key.cell_id for e in session.selected_entries("compute")} \
        == {a, b, c}
    # contexts are independent
    assert session.selected_entries("prove") == []


def test_archive_unit(tmp_path):
    session, doc, sec, a, b, c = selection_fixture()
    path = str(tmp_path / "x.tarch")
    session.save_archive([FormulaKey(doc.path, a)], path)
    session.load_archive(path)
    unit = {"kind": "archive", "path": path}
    session.set_selection("prove", unit, True)
    assert session.selection_state("prove", unit) == "all"


def test_unknown_units_raise():
    session, doc, sec, a, b, c = selection_fixture()
    with pytest.raises(UnknownUnit):
        session.set_selection("prove", {"kind": "archive", "path": "/no"},
                              True)
    with pytest.raises(UnknownUnit):
        session.set_selection("prove", FormulaKey(doc.path, 999), True)
    with pytest.raises(UnknownUnit):
        session.selection_state("nope", FormulaKey(doc.path, a))


def test_builtin_group_toggle():
    session = make_session()
    session.set_builtin_selection("prove", "arithmetic", True)
    assert session.builtin_selection_state("prove", "arithmetic") == "all"
    assert session.builtin_selection_state(
        "prove", "arithmetic.plus") == "all"
    session.set_builtin_selection("prove", "arithmetic.plus", False)
    assert session.builtin_selection_state("prove", "arithmetic") == "partial"
    with pytest.raises(UnknownUnit):
        session.set_builtin_selection("prove", "geometry", True)
