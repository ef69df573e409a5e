import pytest

from tma.lexer import LexError, Token, tokenize


def kinds(text):
    return [(t.kind, t.text) for t in tokenize(text)]


def test_simple_tokens():
    assert kinds("b_j >= 0") == [
        ("ident", "b"), ("operator", "_"), ("ident", "j"),
        ("operator", ">="), ("integer", "0"),
    ]


def test_unicode_aliases_normalize():
    pairs = [
        ("∀", "forall"), ("∃", "exists"), ("∧", "and"),
        ("∨", "or"), ("¬", "not"), ("⇒", "=>"),
        ("⇔", "<=>"), ("≤", "<="), ("≥", ">="),
        ("≠", "!="), ("∈", "in"),
    ]
    for sym, ascii_spelling in pairs:
        t1 = tokenize(sym)[0]
        t2 = tokenize(ascii_spelling)[0]
        assert t1.kind == t2.kind
        assert t1.text == t2.text


def test_def_iff_spellings():
    for text in (":<=>", ":⟺", ":⇔"):
        assert kinds(text) == [("operator", ":<=>")]


def test_multichar_operators_lex_greedily():
    assert kinds("a :<=> b") == [
        ("ident", "a"), ("operator", ":<=>"), ("ident", "b")]
    assert kinds("a := b") == [
        ("ident", "a"), ("operator", ":="), ("ident", "b")]
    assert kinds("1..5") == [
        ("integer", "1"), ("operator", ".."), ("integer", "5")]


def test_keywords_vs_idents():
    assert kinds("forall forAll") == [
        ("keyword", "forall"), ("ident", "forAll")]
    assert kinds("tuple") == [("keyword", "tuple")]
    assert kinds("True False with let") == [
        ("keyword", "True"), ("keyword", "False"),
        ("keyword", "with"), ("keyword", "let")]


def test_unknown_character_reports_offset():
    with pytest.raises(LexError) as err:
        tokenize("§")
    assert err.value.span[0] == 0


def test_byte_offset_spans():
    # ∀ is three UTF-8 bytes, so the following token starts at byte 4
    toks = tokenize("∀ x")
    assert toks[0].span == (0, 3)
    assert toks[1].span == (4, 5)


def test_spans_cover_all_non_whitespace():
    text = "forall[j = 1..|b|, b_j ≥ 0]"
    toks = tokenize(text)
    data = text.encode("utf-8")
    covered = set()
    for t in toks:
        s, e = t.span
        assert s < e
        for i in range(s, e):
            assert i not in covered  # non-overlapping
            covered.add(i)
    for i, byte in enumerate(data):
        if not chr(byte).isspace():
            assert i in covered


def test_tokens_are_values():
    assert tokenize("x")[0] == Token("ident", "x", (0, 1))
