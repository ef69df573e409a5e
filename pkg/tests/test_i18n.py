"""Catalog loading, fallback, and completeness checking."""

import logging

import pytest

from tma.i18n import (
    CatalogFormatError, Translator, UnknownKey, available_languages,
    check_catalog_completeness, english_catalog, load_catalog,
    parse_catalog_text,
)


def test_parse_catalog_lines():
    entries = parse_catalog_text(
        "# comment\n"
        "\n"
        "a.b = hello = world\n"
        "c-d = trimmed   \n")
    assert entries == {"a.b": "hello = world", "c-d": "trimmed"}


def test_parse_rejects_junk():
    with pytest.raises(CatalogFormatError):
        parse_catalog_text("no separator here")
    with pytest.raises(CatalogFormatError):
        parse_catalog_text("bad key! = x")


def test_bundled_languages_present():
    tags = available_languages()
    assert tags[0] == "en"
    assert "de" in tags


def test_empty_dir_yields_english_plus_bundled(tmp_path):
    tags = available_languages(str(tmp_path))
    assert "en" in tags


def test_extra_dir_discovered(tmp_path):
    (tmp_path / "fr").write_text("cli.proved = Prouvé.\n")
    assert "fr" in available_languages(str(tmp_path))


def test_malformed_file_skipped_with_warning(tmp_path, caplog):
    (tmp_path / "it").write_text("garbage line without separator\n")
    with caplog.at_level(logging.WARNING, logger="tma.i18n"):
        tags = available_languages(str(tmp_path))
    assert "it" not in tags
    assert any("skipping catalog" in r.message for r in caplog.records)


def test_non_tag_files_ignored(tmp_path):
    (tmp_path / "README.txt").write_text("not a catalog")
    (tmp_path / "EN").write_text("x = y")
    tags = available_languages(str(tmp_path))
    assert "README.txt" not in tags and "EN" not in tags


def test_lookup_and_fallback(tmp_path):
    (tmp_path / "sv").write_text("cli.proved = Bevisat.\n")
    t = Translator("sv", str(tmp_path))
    assert t.lookup("cli.proved") == "Bevisat."
    english = english_catalog().entries
    assert t.lookup("cli.failed") == english["cli.failed"]


def test_unknown_key_raises():
    t = Translator("en")
    with pytest.raises(UnknownKey):
        t.lookup("no.such.key")


def test_german_catalog_complete():
    assert check_catalog_completeness("de") == []


def test_german_values_all_differ_from_english():
    english = english_catalog().entries
    german = load_catalog("de").entries
    same = [k for k, v in german.items() if english.get(k) == v]
    assert same == []


def test_completeness_reports_missing(tmp_path):
    (tmp_path / "nl").write_text("cli.proved = Bewezen.\n")
    missing = check_catalog_completeness("nl", str(tmp_path))
    assert "cli.failed" in missing
    assert "cli.proved" not in missing
    assert check_catalog_completeness("en") == []


def test_format_fills_slots():
    t = Translator("en")
    text = t.format("cli.error", message="boom")
    assert "boom" in text
    # unknown slots stay visible instead of raising
    assert "{message}" in t.format("cli.error")


def test_lang_dir_overrides_bundled(tmp_path):
    (tmp_path / "de").write_text("cli.proved = Fertig bewiesen.\n")
    t = Translator("de", str(tmp_path))
    assert t.lookup("cli.proved") == "Fertig bewiesen."
