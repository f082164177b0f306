"""
Segmentation Test Suite
Recursive segmentation against morpheme tables, overrides and stem maps.
"""
import io
import itertools
import random
from collections import Counter

import pytest

from unimorph_kit.dataset import Diagnostic, InflectionRecord, Severity, format_inflection, read_inflections
from unimorph_kit.schema import parse_features
from unimorph_kit.segmentation import (
    AffixKind,
    CycleDetected,
    EmptyStem,
    MorphemeEdge,
    MorphemeTable,
    NoMatchingAllomorph,
    NoPath,
    OverrideRule,
    Segmenter,
    SegmentationError,
    align_feature_segmentation,
    load_morpheme_table,
    load_overrides,
    non_monotonic_edges,
    segment,
    segment_dataset,
)

HUNGARIAN_INPUT = "légy\tlégy\tN;NOM;SG\nlégy\tlegyek\tN;NOM;PL\nlégy\tlegyeknek\tN;DAT;PL\n"
HUNGARIAN_SEGMENTED = [
    "légy\tlégy\tN;NOM;SG",
    "légy\tlegyek\tN|NOM;PL\tlégy|ek",
    "légy\tlegyeknek\tN|PL|DAT\tlégy|ek|nek",
]


def cell(text: str):
    return parse_features(text)


# --- HUNGARIAN EXAMPLE ---

def test_table_roots_and_edges(hungarian_table):
    assert hungarian_table.is_root(cell("N;NOM;SG"))
    assert not hungarian_table.is_root(cell("N;DAT;PL"))
    [edge] = hungarian_table.edges_into(cell("N;NOM;PL"))
    assert edge.allomorphs == ("ök", "ok", "ek", "ak", "k")
    assert hungarian_table.find_cycle() is None


def test_longest_allomorph_wins(hungarian_segmenter):
    seg = hungarian_segmenter.segment("legyeknek", cell("N;DAT;PL"))
    assert seg.morphs == ("legy", "ek", "nek")
    assert seg.display_morphs == ("légy", "ek", "nek")
    assert seg.stem == "legy"
    assert seg.surface() == "legyeknek"


def test_all_parses_best_first(hungarian_segmenter):
    parses = hungarian_segmenter.segment_all("legyeknek", cell("N;DAT;PL"))
    assert [p.morphs for p in parses] == [("legy", "ek", "nek"), ("legye", "k", "nek")]


def test_feature_segmentation_alignment(hungarian_segmenter):
    seg = hungarian_segmenter.segment("legyeknek", cell("N;DAT;PL"))
    assert align_feature_segmentation(seg, cell("N;DAT;PL")) == "N|PL|DAT"
    seg = hungarian_segmenter.segment("legyek", cell("N;NOM;PL"))
    assert align_feature_segmentation(seg, cell("N;NOM;PL")) == "N|NOM;PL"


def test_segment_dataset_on_the_hungarian_rows(hungarian_segmenter):
    items = read_inflections(io.StringIO(HUNGARIAN_INPUT))
    out = [format_inflection(r) for r in segment_dataset(items, hungarian_segmenter)]
    assert out == HUNGARIAN_SEGMENTED


def test_segment_dataset_all_parses_emits_one_row_per_parse(hungarian_segmenter):
    items = read_inflections(io.StringIO("légy\tlegyeknek\tN;DAT;PL\n"))
    rows = list(segment_dataset(items, hungarian_segmenter, all_parses=True))
    assert [r.segmentation for r in rows] == [("légy", "ek", "nek"), ("legye", "k", "nek")]


def test_segment_dataset_reports_failures(hungarian_segmenter):
    items = read_inflections(io.StringIO("x\ty\tV;PRS\nlégy\tlegyeknek\tN;DAT;PL\n"), path="in.tsv")
    first, second = segment_dataset(items, hungarian_segmenter, path="in.tsv")
    assert isinstance(first, Diagnostic)
    assert first.code == "NoPath"
    assert first.line_number == 1
    assert isinstance(second, InflectionRecord)


def test_segment_dataset_warns_about_edges_that_add_nothing():
    table = MorphemeTable(edges=(
        MorphemeEdge(source=cell("N;NOM;PL"), target=cell("N;PL"), allomorphs=("x",)),
    ))
    items = read_inflections(io.StringIO("ab\tabx\tN;PL\n"), path="t.tsv")
    warning, row = segment_dataset(items, Segmenter(table), path="t.tsv")
    assert isinstance(warning, Diagnostic)
    assert (warning.code, warning.severity, warning.line_number) == ("NonMonotonicEdge", Severity.WARNING, 1)
    assert "N;NOM;PL -> N;PL" in warning.message
    assert row.segmentation == ("ab", "x")


def test_monotonic_paths_carry_no_warning(hungarian_segmenter):
    seg = hungarian_segmenter.segment("legyeknek", cell("N;DAT;PL"))
    assert non_monotonic_edges(seg) == []


@pytest.mark.parametrize("form, features, error", [
    ("x", "V;PRS", NoPath),
    ("k", "N;NOM;PL", EmptyStem),
    ("legyx", "N;NOM;PL", NoMatchingAllomorph),
])
def test_segmentation_failures(hungarian_segmenter, form, features, error):
    with pytest.raises(error):
        hungarian_segmenter.segment(form, cell(features))


def test_cyclic_table_hits_the_path_limit():
    table = MorphemeTable(edges=(
        MorphemeEdge(source=cell("V;LGSPEC1"), target=cell("V;LGSPEC2"), allomorphs=("a",)),
        MorphemeEdge(source=cell("V;LGSPEC2"), target=cell("V;LGSPEC3"), allomorphs=("b",)),
        MorphemeEdge(source=cell("V;LGSPEC3"), target=cell("V;LGSPEC2"), allomorphs=("c",)),
    ))
    assert table.find_cycle() is not None
    segmenter = Segmenter(table, max_path_length=4)
    with pytest.raises(CycleDetected):
        segmenter.segment("sabcbcbcbc", cell("V;LGSPEC2"))


def test_override_takes_precedence(hungarian_table):
    rule = OverrideRule(form="legyeknek", features=cell("N;DAT;PL"),
                        segmentation=("legyek", "nek"), feature_segmentation="N;PL|DAT")
    seg = segment("legyeknek", cell("N;DAT;PL"), hungarian_table, overrides=[rule])
    assert seg.morphs == ("legyek", "nek")
    assert align_feature_segmentation(seg, cell("N;DAT;PL")) == "N;PL|DAT"


def test_override_must_spell_its_form():
    with pytest.raises(ValueError):
        OverrideRule(form="abc", features=cell("N;PL"), segmentation=("ab", "d"))


def test_load_overrides_and_prefix_table(write_file):
    path = write_file("over.tsv", "# irregulars\nmen\tN;PL\tmen\n")
    [rule] = load_overrides(path)
    assert rule.segmentation == ("men",)

    table_path = write_file("table.tsv", "V;NFIN\tge-\tV.PTCP;PST\tprefix\n")
    table = load_morpheme_table(table_path)
    seg = Segmenter(table).segment("gemacht", cell("V.PTCP;PST"))
    assert seg.morphs == ("ge", "macht")
    assert seg.path[0].kind == AffixKind.PREFIX


# --- RANDOM TABLES AGAINST BRUTE FORCE ---

ALPHABET = "ab"


def random_table(rng: random.Random, size: int) -> MorphemeTable:
    edges = []
    for source, target in itertools.combinations(range(size), 2):
        if rng.random() < 0.45:
            allomorphs = {"".join(rng.choice(ALPHABET) for _ in range(rng.randint(1, 2)))
                          for _ in range(rng.randint(1, 3))}
            edges.append(MorphemeEdge(
                source=cell(f"V;LGSPEC{source}"),
                target=cell(f"V;LGSPEC{target}"),
                allomorphs=tuple(sorted(allomorphs)),
                kind=rng.choice([AffixKind.SUFFIX, AffixKind.PREFIX]),
            ))
    return MorphemeTable(edges=tuple(edges))


def brute_force(table: MorphemeTable, form: str, target) -> Counter:
    """Every (chain, allomorph choice) that spells the form with a non-empty stem."""

    def chains(bundle):
        found = [[]] if table.is_root(bundle) else []
        for edge in table.edges_into(bundle):
            found.extend(chain + [edge] for chain in chains(edge.source))
        return found

    results: Counter = Counter()
    if not table.knows(target):
        return results
    for chain in chains(target):
        for choice in itertools.product(*(edge.allomorphs for edge in chain)):
            steps = list(zip(chain, choice))
            prefixes = [a for e, a in reversed(steps) if e.kind == AffixKind.PREFIX]
            suffixes = [a for e, a in steps if e.kind == AffixKind.SUFFIX]
            head, tail = "".join(prefixes), "".join(suffixes)
            if len(form) > len(head) + len(tail) and form.startswith(head) and form.endswith(tail):
                stem = form[len(head): len(form) - len(tail)]
                results[(*prefixes, stem, *suffixes)] += 1
    return results


def test_random_tables_match_brute_force():
    rng = random.Random(11)
    for _ in range(200):
        size = rng.randint(2, 5)
        table = random_table(rng, size)
        segmenter = Segmenter(table)
        for _ in range(5):
            target = cell(f"V;LGSPEC{rng.randrange(size)}")
            form = "".join(rng.choice(ALPHABET) for _ in range(rng.randint(1, 7)))
            expected = brute_force(table, form, target)
            try:
                parses = segmenter.segment_all(form, target)
            except SegmentationError:
                assert not expected, (form, target)
                continue
            assert Counter(p.morphs for p in parses) == expected
            assert all(p.surface() == form for p in parses)
