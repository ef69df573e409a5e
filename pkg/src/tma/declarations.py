"""Global declarations: quantifiers, assumptions, and abbreviations that
a declaration cell contributes to every formula in its scope."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .formulas import Binder, Formula


@dataclass(frozen=True)
class QuantifierDecl:
    """An orphaned universal quantifier: binder without a body."""

    binder: Binder
    origin: Optional[tuple[str, int]] = None  # (doc path, cell id)


@dataclass(frozen=True)
class ImplicationDecl:
    """An orphaned implication: left-hand side without a conclusion."""

    lhs: Formula
    origin: Optional[tuple[str, int]] = None


@dataclass(frozen=True)
class LetDecl:
    """An abbreviation  let name = replacement."""

    name: str
    replacement: Formula
    origin: Optional[tuple[str, int]] = None


@dataclass(frozen=True)
class DeclSequence:
    """Several declarations written in one cell; later items are
    innermost."""

    items: tuple[Union[QuantifierDecl, ImplicationDecl, LetDecl], ...]
    origin: Optional[tuple[str, int]] = None


GlobalDeclaration = Union[QuantifierDecl, ImplicationDecl, LetDecl, DeclSequence]


def with_origin(decl: GlobalDeclaration,
                origin: tuple[str, int]) -> GlobalDeclaration:
    import dataclasses

    if isinstance(decl, DeclSequence):
        items = tuple(dataclasses.replace(i, origin=origin) for i in decl.items)
        return DeclSequence(items, origin)
    return dataclasses.replace(decl, origin=origin)
