"""Tokenizer for the 1D formula syntax.

Unicode connective aliases are normalized at this level: a token made
from ``∀`` is indistinguishable from one made from ``forall``.  Spans
are byte offsets into the UTF-8 form of the input.
"""

from __future__ import annotations

from dataclasses import dataclass


class LexError(Exception):
    def __init__(self, message: str, span: tuple[int, int]):
        super().__init__(f"{message} at byte {span[0]}")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str  # ident | integer | operator | bracket | keyword
    text: str  # normalized ASCII spelling
    span: tuple[int, int]


KEYWORDS = {"forall", "exists", "with", "let", "tuple", "True", "False"}

# word-shaped operators
WORD_OPERATORS = {"and", "or", "not", "in"}

# multi-character operators, longest first
_MULTI = [":<=>", "<=>", ":=", "=>", "<=", ">=", "!=", ".."]
_SINGLE = ":=<>+-*/^_|,"
_BRACKETS = "()[]{}"

# single unicode characters that alias an ASCII spelling
_ALIASES: dict[str, tuple[str, str]] = {
    "∀": ("keyword", "forall"),   # ∀
    "∃": ("keyword", "exists"),   # ∃
    "∧": ("operator", "and"),     # ∧
    "∨": ("operator", "or"),      # ∨
    "¬": ("operator", "not"),     # ¬
    "⇒": ("operator", "=>"),      # ⇒
    "⇔": ("operator", "<=>"),     # ⇔
    "⟺": ("operator", "<=>"),     # ⟺
    "≤": ("operator", "<="),      # ≤
    "≥": ("operator", ">="),      # ≥
    "≠": ("operator", "!="),      # ≠
    "∈": ("operator", "in"),      # ∈
    "⟨": ("bracket", "⟨"),   # ⟨
    "⟩": ("bracket", "⟩"),   # ⟩
}


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    byte = 0
    n = len(text)

    def blen(s: str) -> int:
        return len(s.encode("utf-8"))

    while i < n:
        ch = text[i]
        if ch.isspace():
            byte += blen(ch)
            i += 1
            continue
        start = byte
        if ch.isascii() and (ch.isalpha()):
            j = i
            while j < n and text[j].isascii() and text[j].isalnum():
                j += 1
            word = text[i:j]
            end = byte + blen(word)
            if word in KEYWORDS:
                kind = "keyword"
            elif word in WORD_OPERATORS:
                kind = "operator"
            else:
                kind = "ident"
            tokens.append(Token(kind, word, (start, end)))
            i, byte = j, end
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            word = text[i:j]
            end = byte + blen(word)
            tokens.append(Token("integer", word, (start, end)))
            i, byte = j, end
            continue
        if ch == ":" and i + 1 < n and text[i + 1] in "⟺⇔":
            pair = text[i:i + 2]
            end = byte + blen(pair)
            tokens.append(Token("operator", ":<=>", (start, end)))
            i, byte = i + 2, end
            continue
        if ch in _ALIASES:
            kind, norm = _ALIASES[ch]
            end = byte + blen(ch)
            tokens.append(Token(kind, norm, (start, end)))
            i, byte = i + 1, end
            continue
        matched = False
        for op in _MULTI:
            if text.startswith(op, i):
                end = byte + len(op)
                tokens.append(Token("operator", op, (start, end)))
                i, byte = i + len(op), end
                matched = True
                break
        if matched:
            continue
        if ch in _BRACKETS:
            end = byte + 1
            tokens.append(Token("bracket", ch, (start, end)))
            i, byte = i + 1, end
            continue
        if ch in _SINGLE:
            end = byte + 1
            tokens.append(Token("operator", ch, (start, end)))
            i, byte = i + 1, end
            continue
        raise LexError(f"unexpected character {ch!r}", (start, start + blen(ch)))
    return tokens
