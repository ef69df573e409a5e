"""Language catalogs.

No user-visible string is hardcoded: everything resolves through a
catalog keyed by message id.  The bundled English catalog defines the
key universe; any other language overlays it and falls back to English
for keys it does not translate.  Catalog files are named exactly by
their language tag and hold "key = value" lines.
"""

from __future__ import annotations

import logging
import os
import re
from dataclasses import dataclass, field
from typing import Optional

log = logging.getLogger("tma.i18n")

BUNDLED_DIR = os.path.join(os.path.dirname(__file__), "locale")

_TAG_RE = re.compile(r"^[a-z]{2,3}(-[A-Za-z0-9]{1,8})*$")
_KEY_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


class I18nError(Exception):
    pass


class UnknownKey(I18nError):
    """A key outside the English key universe; a programming error."""


class CatalogFormatError(I18nError):
    pass


@dataclass
class Catalog:
    tag: str
    entries: dict[str, str] = field(default_factory=dict)
    source_path: Optional[str] = None


def parse_catalog_text(text: str, source: str = "<string>") -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CatalogFormatError(
                f"{source}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        if not _KEY_RE.match(key):
            raise CatalogFormatError(f"{source}:{lineno}: bad key {key!r}")
        entries[key] = value.strip()
    return entries


def _read_catalog(path: str, tag: str) -> Catalog:
    with open(path, encoding="utf-8") as fh:
        entries = parse_catalog_text(fh.read(), source=path)
    return Catalog(tag, entries, path)


def load_catalog(tag: str, lang_dir: Optional[str] = None) -> Catalog:
    """The catalog for a tag: a file in lang_dir wins over the bundled
    one; a tag with no file at all yields an empty overlay."""
    for base in ([lang_dir] if lang_dir else []) + [BUNDLED_DIR]:
        path = os.path.join(base, tag)
        if os.path.isfile(path):
            return _read_catalog(path, tag)
    return Catalog(tag)


def english_catalog() -> Catalog:
    return _read_catalog(os.path.join(BUNDLED_DIR, "en"), "en")


def available_languages(lang_dir: Optional[str] = None) -> list[str]:
    """English plus every well-formed catalog in the bundled directory
    and lang_dir.  Malformed files are skipped with a warning."""
    tags = ["en"]
    for base in [BUNDLED_DIR] + ([lang_dir] if lang_dir else []):
        if not os.path.isdir(base):
            continue
        for name in sorted(os.listdir(base)):
            path = os.path.join(base, name)
            if not os.path.isfile(path) or not _TAG_RE.match(name) \
                    or name in tags:
                continue
            try:
                _read_catalog(path, name)
            except (CatalogFormatError, OSError) as exc:
                log.warning("skipping catalog %s: %s", path, exc)
                continue
            tags.append(name)
    return tags


def check_catalog_completeness(tag: str,
                               lang_dir: Optional[str] = None) -> list[str]:
    """Keys of the English universe the tag does not translate."""
    universe = english_catalog().entries
    if tag == "en":
        return []
    overlay = load_catalog(tag, lang_dir).entries
    return [k for k in universe if k not in overlay]


class _Slots(dict):
    def __missing__(self, key):  # leave unknown placeholders visible
        return "{" + key + "}"


def fill(template: str, /, **slots) -> str:
    """Format a template, keeping unknown placeholders visible."""
    return template.format_map(_Slots(slots))


class Translator:
    """Key lookup for one language with English fallback."""

    def __init__(self, language: str = "en",
                 lang_dir: Optional[str] = None):
        self.language = language
        self.lang_dir = lang_dir
        self.english = english_catalog()
        if language == "en":
            self.overlay = Catalog("en", dict(self.english.entries),
                                   self.english.source_path)
        else:
            try:
                self.overlay = load_catalog(language, lang_dir)
            except CatalogFormatError as exc:
                log.warning("catalog for %s unusable: %s", language, exc)
                self.overlay = Catalog(language)

    def lookup(self, key: str) -> str:
        if key not in self.english.entries:
            raise UnknownKey(key)
        return self.overlay.entries.get(key, self.english.entries[key])

    def format(self, key: str, /, **slots) -> str:
        return fill(self.lookup(key), **slots)

    def has(self, key: str) -> bool:
        return key in self.english.entries
