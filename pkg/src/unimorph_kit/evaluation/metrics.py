"""
Treebank Evaluation
Scores a UniMorph inflection dataset against UD tokens mapped into UniMorph
bundles. Counting is by distinct (lemma, form, bundle) types.
"""
from collections import defaultdict
from typing import Iterable, Optional, TextIO, Union

from loguru import logger
from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from unimorph_kit.dataset.records import Diagnostic, InflectionRecord
from unimorph_kit.evaluation.conllu import UDToken
from unimorph_kit.evaluation.mapping import MappingProfile, UnmappedUPOS, map_ud_to_unimorph
from unimorph_kit.schema.convert import hierarchical_to_flat
from unimorph_kit.schema.features import FeatureBundle, SchemaKind, bundle_key, canonicalize
from unimorph_kit.schema.profiles import LanguageProfile

OVERALL = "ALL"
REPORT_COLUMNS = ("pos", "total", "attempted", "matched", "recall", "precision", "f1")


def f_measure(precision: float, recall: float) -> float:
    """Harmonic mean of two percentages; 0 when both are 0."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


class EvalCounts(BaseModel):
    total: int = 0
    attempted: int = 0
    matched: int = 0

    @property
    def recall(self) -> float:
        return 100.0 * self.matched / self.total if self.total else 0.0

    @property
    def precision(self) -> float:
        return 100.0 * self.matched / self.attempted if self.attempted else 0.0

    @property
    def f1(self) -> float:
        return f_measure(self.precision, self.recall)


class EvalReport(BaseModel):
    per_pos: dict[str, EvalCounts] = Field(default_factory=dict)
    overall: EvalCounts = Field(default_factory=EvalCounts)
    excluded: int = Field(default=0, description="Tokens whose UPOS has no mapping")
    malformed: int = Field(default=0, description="CoNLL-U lines that could not be parsed")

    def rows(self) -> list[tuple[str, EvalCounts]]:
        return [*sorted(self.per_pos.items()), (OVERALL, self.overall)]


class UniMorphIndex(BaseModel):
    """(lemma, form) -> flat bundles; None marks a row with no flat equivalent."""

    entries: dict[tuple[str, str], list[Optional[FeatureBundle]]] = Field(default_factory=dict)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self.entries

    def bundles(self, lemma: str, form: str) -> list[Optional[FeatureBundle]]:
        return self.entries.get((lemma, form), [])


def build_index(items: Iterable[Union[InflectionRecord, Diagnostic]],
                profile: Optional[LanguageProfile] = None) -> UniMorphIndex:
    """
    Index a UniMorph dataset by (lemma, form). Hierarchical rows are converted
    to flat with `profile`; rows that cannot be converted keep their pair in
    the index but never match a bundle.
    """
    entries: dict[tuple[str, str], list[Optional[FeatureBundle]]] = defaultdict(list)
    for item in items:
        if not isinstance(item, InflectionRecord):
            continue
        bundle: Optional[FeatureBundle] = canonicalize(item.features, strict=False)
        if bundle.schema_kind == SchemaKind.HIERARCHICAL:
            converted = hierarchical_to_flat(bundle, profile) if profile is not None else None
            bundle = converted if isinstance(converted, FeatureBundle) else None
            if bundle is None:
                logger.debug(f"{item.lemma}/{item.form}: kept for presence only")
        entries[(item.lemma, item.form)].append(bundle)
    return UniMorphIndex(entries=dict(entries))


def _matches(mapped: FeatureBundle, indexed: FeatureBundle, partial: bool) -> bool:
    if partial:
        return indexed.atomic_keys() <= mapped.atomic_keys()
    return bundle_key(mapped) == bundle_key(indexed)


def evaluate(index: UniMorphIndex, tokens: Iterable[Union[UDToken, Diagnostic]],
             profile: MappingProfile, partial: bool = False) -> EvalReport:
    """
    Count each distinct (lemma, form, mapped bundle) once: in `total`; in
    `attempted` when the pair is in the index; in `matched` when some indexed
    bundle for the pair equals the mapped one (or, with `partial`, is a
    subset of it).
    """
    report = EvalReport()
    seen: set[tuple[str, str, str]] = set()
    per_pos: dict[str, EvalCounts] = defaultdict(EvalCounts)
    for token in tokens:
        if isinstance(token, Diagnostic):
            if token.code == "MalformedLine":
                report.malformed += 1
            continue
        try:
            mapped = map_ud_to_unimorph(token, profile)
        except UnmappedUPOS:
            report.excluded += 1
            continue
        unit = (token.lemma, token.form, bundle_key(mapped))
        if unit in seen:
            continue
        seen.add(unit)

        pos = mapped.pos.key if mapped.pos is not None else "_"
        counters = (per_pos[pos], report.overall)
        for counter in counters:
            counter.total += 1
        if (token.lemma, token.form) not in index:
            continue
        for counter in counters:
            counter.attempted += 1
        if any(b is not None and _matches(mapped, b, partial) for b in index.bundles(token.lemma, token.form)):
            for counter in counters:
                counter.matched += 1
    report.per_pos = dict(per_pos)
    return report


def _fmt(value: float) -> str:
    return f"{value:.1f}"


def render_report_tsv(report: EvalReport, stream: TextIO) -> None:
    stream.write("\t".join(REPORT_COLUMNS) + "\n")
    for pos, counts in report.rows():
        stream.write("\t".join((
            pos, str(counts.total), str(counts.attempted), str(counts.matched),
            _fmt(counts.recall), _fmt(counts.precision), _fmt(counts.f1),
        )) + "\n")


def render_report_table(report: EvalReport, console: Console) -> None:
    table = Table(title="UD Validation", show_lines=False)
    table.add_column("POS", style="bold")
    for name in ("Total", "Attempted", "Matched", "Recall", "Precision", "F1"):
        table.add_column(name, justify="right")
    for pos, counts in report.rows():
        table.add_row(
            pos, str(counts.total), str(counts.attempted), str(counts.matched),
            _fmt(counts.recall), _fmt(counts.precision), _fmt(counts.f1),
        )
    console.print(table)
    console.print(f"excluded={report.excluded} malformed={report.malformed}")
