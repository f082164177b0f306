"""
Dataset Test Suite
Reading, writing, validating and counting UniMorph inflection files.
"""
import io

import pytest

from unimorph_kit.dataset import (
    Diagnostic,
    InflectionRecord,
    SchemaMode,
    Severity,
    compute_stats,
    read_inflections,
    validate_dataset,
    write_inflections,
)
from unimorph_kit.schema import ParseMode, serialize

HUNGARIAN_ROWS = "légy\tlégy\tN;NOM;SG\nlégy\tlegyek\tN;NOM;PL\nlégy\tlegyeknek\tN;DAT;PL\n"


def read(text: str, **kwargs):
    return list(read_inflections(io.StringIO(text), **kwargs))


def codes(items):
    return [item.code for item in items if isinstance(item, Diagnostic)]


# --- READER ---

def test_read_segmented_row():
    [record] = read("légy\tlegyeknek\tN|PL|DAT\tlégy|ek|nek\n")
    assert record.lemma == "légy"
    assert record.form == "legyeknek"
    assert record.segmentation == ("légy", "ek", "nek")
    assert record.feature_segmentation == "N|PL|DAT"
    assert serialize(record.features) == "N;PL;DAT"


def test_blank_lines_are_skipped():
    assert read("\n\n") == []
    assert len(read("a\tb\tN;SG\n\n\nc\td\tN;PL\n")) == 2


def test_crlf_line_endings_are_accepted():
    [record] = read("a\tb\tN;SG\r\n")
    assert serialize(record.features) == "N;SG"


@pytest.mark.parametrize("text, code", [
    ("a\tb\n", "BadColumnCount"),
    ("a\tb\tN\tx\ty\n", "BadColumnCount"),
    ("a\t\tN;SG\n", "EmptyField"),
    ("a\tb\tN;DAT(PL\n", "FeatureParseError"),
    ("a\tab\tN|PL\ta||b\n", "EmptyMorph"),
    ("a\tab\tN|PL|DAT\ta|b\n", "FeatureSegmentationMisaligned"),
])
def test_malformed_rows_become_diagnostics(text, code):
    [item] = read(text)
    assert isinstance(item, Diagnostic)
    assert item.code == code
    assert item.severity == Severity.ERROR
    assert item.line_number == 1


def test_malformed_rows_do_not_abort_the_stream():
    items = read("a\tb\nc\td\tN;SG\n")
    assert codes(items) == ["BadColumnCount"]
    assert isinstance(items[1], InflectionRecord)
    assert items[1].line_number == 2


def test_non_nfc_row_is_a_warning_and_still_read():
    decomposed = "le\u0301gy"
    items = read(f"{decomposed}\t{decomposed}\tN;NOM;SG\n")
    assert items[0].code == "NotNFC"
    assert items[0].severity == Severity.WARNING
    assert isinstance(items[1], InflectionRecord)


def test_schema_mode_mismatch():
    items = read("a\tb\tN;DAT(PL)\n", schema_mode=SchemaMode.FLAT)
    assert codes(items) == ["SchemaMismatch"]
    [record] = read("a\tb\tN;DAT(PL)\n", schema_mode=SchemaMode.HIERARCHICAL)
    assert isinstance(record, InflectionRecord)


def test_strict_parse_mode_rejects_unknown_tags():
    assert codes(read("a\tb\tN;FOO\n", parse_mode=ParseMode.STRICT)) == ["FeatureParseError"]
    assert codes(read("a\tb\tN;FOO\n", parse_mode=ParseMode.LAX)) == []


def test_write_then_read_gives_identical_records():
    text = HUNGARIAN_ROWS + "légy\tlegyeknek\tN|PL|DAT\tlegy|ek|nek\nx\ty\tN;ACC(SG;PSSD;PSS(1,SG))\n"
    records = read(text)
    out = io.StringIO()
    assert write_inflections(records, out) == 5
    again = read(out.getvalue())
    assert again == records
    assert out.getvalue() == text


# --- VALIDATION ---

def test_duplicate_triple_is_reported_at_the_second_line():
    result = validate_dataset(read("a\tb\tN;SG\na\tb\tN;SG\n"))
    [diagnostic] = result.diagnostics
    assert diagnostic.code == "DuplicateTriple"
    assert diagnostic.line_number == 2
    assert "line 1" in diagnostic.message
    assert result.error_count == 1


def test_duplicate_detection_ignores_feature_order():
    result = validate_dataset(read("a\tb\tN;SG;DAT\na\tb\tN;DAT;SG\n"))
    assert codes(result.diagnostics) == ["DuplicateTriple"]


def test_overabundant_cell_is_a_warning():
    result = validate_dataset(read("a\tb\tN;SG\na\tc\tN;SG\n"))
    assert codes(result.diagnostics) == ["OverabundantCell"]
    assert result.warning_count == 1
    assert result.error_count == 0


def test_segmentation_mismatch():
    result = validate_dataset(read("légy\tlegyeknek\tN|PL\tlégy|ek\n"))
    assert "SegmentationMismatch" in codes(result.diagnostics)


def test_display_stems_are_accepted_through_the_stem_map():
    items = read("légy\tlegyeknek\tN|PL|DAT\tlégy|ek|nek\n")
    assert "SegmentationMismatch" in codes(validate_dataset(items).diagnostics)
    assert codes(validate_dataset(items, stem_map={"legy": "légy"}).diagnostics) == []


def test_mixed_schema_is_reported_once():
    result = validate_dataset(read("a\tb\tN;NOM;SG\na\tc\tN;NOM(SG)\na\td\tN;DAT(PL)\n"))
    assert codes(result.diagnostics) == ["MixedSchema"]
    assert result.diagnostics[0].line_number == 2


def test_missing_pos_is_a_warning():
    result = validate_dataset(read("a\tb\tSG;NOM\n"))
    assert codes(result.diagnostics) == ["MissingPOS"]


def test_reader_diagnostics_keep_their_place():
    result = validate_dataset(read("a\tb\tN;SG\nbad\trow\na\tb\tN;SG\n", path="x.tsv"), path="x.tsv")
    assert codes(result.diagnostics) == ["BadColumnCount", "DuplicateTriple"]
    assert result.diagnostics[1].format() == "x.tsv:3: error: DuplicateTriple: repeats line 1"


def test_diagnostics_are_deterministic():
    text = "a\tb\tN;SG\na\tb\tN;SG\na\tc\tN;SG\nx\n" * 3
    first = validate_dataset(read(text)).diagnostics
    second = validate_dataset(read(text)).diagnostics
    assert first == second


# --- STATISTICS ---

def test_hungarian_fixture_counts():
    stats = compute_stats(read(HUNGARIAN_ROWS))
    assert stats.summary() == "lemmas=1 forms=3"
    assert stats.per_pos_counts["N"].forms == 3


def test_empty_stream_counts():
    assert compute_stats([]).summary() == "lemmas=0 forms=0"


def test_two_lemmas_three_forms_each():
    rows = "".join(f"{lemma}\t{lemma}{i}\tV;{tense}\n"
                   for lemma in ("go", "see") for i, tense in enumerate(("PRS", "PST", "FUT")))
    stats = compute_stats(read(rows))
    assert (stats.lemma_count, stats.form_count) == (2, 6)


def test_stats_report_rows_without_a_pos_tag():
    stats = compute_stats(read("dog\tdogs\tN;PL\nx\ty\tPL\n"), path="mixed.tsv")
    assert stats.per_pos_counts["_"].forms == 1
    [missing] = stats.missing_pos
    assert (missing.code, missing.severity, missing.line_number) == ("MissingPOS", Severity.WARNING, 2)
    assert missing.format() == "mixed.tsv:2: warning: MissingPOS: bundle has no part-of-speech tag"
    assert compute_stats(read(HUNGARIAN_ROWS)).missing_pos == []


def test_per_pos_counts():
    stats = validate_dataset(read("run\truns\tV;PRS;3;SG\nrun\truns\tN;PL\ndog\tdogs\tN;PL\nx\ty\tPL\n")).stats
    assert stats.per_pos_counts["V"].lemmas == 1
    assert stats.per_pos_counts["N"].lemmas == 2
    assert stats.per_pos_counts["_"].forms == 1
    assert list(stats.per_pos_counts) == sorted(stats.per_pos_counts)
