"""
Dataset Validation
Structural checks over a stream of inflection records, and the lemma/form
statistics reported alongside them.
"""
import re
from typing import Iterable, Mapping, Optional

from pydantic import BaseModel, Field

from unimorph_kit.dataset.reader import InflectionItem
from unimorph_kit.dataset.records import (
    DatasetStats,
    Diagnostic,
    InflectionRecord,
    PosCounts,
    Severity,
)
from unimorph_kit.schema.features import FeatureBundle, SchemaKind, bundle_key
from unimorph_kit.schema.inventory import ARGUMENT_MARKING, CASE, NUMBER, PERSON, POSSESSION

NO_POS = "_"
_POSSESSOR_TAG = re.compile(r"^PSS(\d|R)")


class StatsCollector:
    """Accumulates DatasetStats one record at a time."""

    def __init__(self, path: Optional[str] = None):
        self._path = path
        self._missing_pos: list[Diagnostic] = []
        self._lemmas: set[str] = set()
        self._forms = 0
        self._pos_lemmas: dict[str, set[str]] = {}
        self._pos_forms: dict[str, int] = {}

    def add(self, record: InflectionRecord) -> Optional[Diagnostic]:
        """Count the record; returns the MissingPOS diagnostic when it has no POS tag."""
        pos = record.features.pos
        key = pos.key if pos is not None else NO_POS
        self._lemmas.add(record.lemma)
        self._forms += 1
        self._pos_lemmas.setdefault(key, set()).add(record.lemma)
        self._pos_forms[key] = self._pos_forms.get(key, 0) + 1
        if pos is not None:
            return None
        missing = Diagnostic(line_number=record.line_number or 1, severity=Severity.WARNING, code="MissingPOS",
                             message="bundle has no part-of-speech tag", path=self._path)
        self._missing_pos.append(missing)
        return missing

    def stats(self) -> DatasetStats:
        per_pos = {
            key: PosCounts(lemmas=len(self._pos_lemmas[key]), forms=self._pos_forms[key])
            for key in sorted(self._pos_forms)
        }
        return DatasetStats(lemma_count=len(self._lemmas), form_count=self._forms, per_pos_counts=per_pos,
                            missing_pos=list(self._missing_pos))


class ValidationResult(BaseModel):
    diagnostics: list[Diagnostic] = Field(default_factory=list)
    stats: DatasetStats = Field(default_factory=DatasetStats)

    @property
    def error_count(self) -> int:
        return sum(1 for d in self.diagnostics if d.severity == Severity.ERROR)

    @property
    def warning_count(self) -> int:
        return sum(1 for d in self.diagnostics if d.severity == Severity.WARNING)


def _flat_evidence(bundle: FeatureBundle) -> bool:
    """True when a flat bundle holds features the hierarchical schema would nest."""
    dimensions = {node.dimension for node in bundle.nodes}
    if ARGUMENT_MARKING in dimensions:
        return True
    if CASE in dimensions and (NUMBER in dimensions or POSSESSION in dimensions):
        return True
    if any(_POSSESSOR_TAG.match(node.head.key) for node in bundle.nodes):
        return True
    pos = bundle.pos
    return pos is not None and pos.key.startswith("V") and PERSON in dimensions


def _schema_evidence(bundle: FeatureBundle) -> Optional[SchemaKind]:
    if bundle.schema_kind == SchemaKind.HIERARCHICAL:
        return SchemaKind.HIERARCHICAL
    if _flat_evidence(bundle):
        return SchemaKind.FLAT
    return None


def validate_dataset(
    items: Iterable[InflectionItem],
    stem_map: Optional[Mapping[str, str]] = None,
    path: Optional[str] = None,
) -> ValidationResult:
    """
    Check a record stream and compute its statistics.

    Diagnostics already present in the stream (from the reader) are kept in
    place, so the result lists every problem in input order. `stem_map` maps
    surface stems to display stems; a segmentation whose stem is a display
    stem is accepted when its surface stem reconstructs the form.
    """
    diagnostics: list[Diagnostic] = []
    collector = StatsCollector(path)
    seen_triples: dict[tuple[str, str, str], int] = {}
    cells: dict[tuple[str, str], str] = {}
    first_schema: Optional[tuple[SchemaKind, int]] = None
    mixed_reported = False
    surface_of = {display: surface for surface, display in (stem_map or {}).items()}

    def flag(record: InflectionRecord, severity: Severity, code: str, message: str) -> None:
        diagnostics.append(Diagnostic(
            line_number=record.line_number or 1, severity=severity, code=code,
            message=message, path=path,
        ))

    for item in items:
        if isinstance(item, Diagnostic):
            diagnostics.append(item)
            continue
        record = item
        missing_pos = collector.add(record)
        if missing_pos is not None:
            diagnostics.append(missing_pos)
        key = bundle_key(record.features)
        line = record.line_number or 1

        triple = (record.lemma, record.form, key)
        if triple in seen_triples:
            flag(record, Severity.ERROR, "DuplicateTriple",
                 f"repeats line {seen_triples[triple]}")
        else:
            seen_triples[triple] = line
            cell = (record.lemma, key)
            if cell in cells and cells[cell] != record.form:
                flag(record, Severity.WARNING, "OverabundantCell",
                     f"{record.lemma} {key} also has form {cells[cell]}")
            cells.setdefault(cell, record.form)

        evidence = _schema_evidence(record.features)
        if evidence is not None:
            if first_schema is None:
                first_schema = (evidence, line)
            elif evidence != first_schema[0] and not mixed_reported:
                flag(record, Severity.WARNING, "MixedSchema",
                     f"{evidence.value} row in a file that is {first_schema[0].value} "
                     f"since line {first_schema[1]}")
                mixed_reported = True

        if record.segmentation is not None and "".join(record.segmentation) != record.form:
            surface = "".join(surface_of.get(morph, morph) for morph in record.segmentation)
            if surface != record.form:
                flag(record, Severity.ERROR, "SegmentationMismatch",
                     f"morphs {'|'.join(record.segmentation)} do not spell {record.form}")

    return ValidationResult(diagnostics=diagnostics, stats=collector.stats())


def compute_stats(items: Iterable[InflectionItem], path: Optional[str] = None) -> DatasetStats:
    """
    Count distinct lemmas and rows. Reader diagnostics in the stream are skipped;
    rows without a part-of-speech tag are counted under "_" and reported in
    `missing_pos`.
    """
    collector = StatsCollector(path)
    for item in items:
        if isinstance(item, InflectionRecord):
            collector.add(item)
    return collector.stats()
