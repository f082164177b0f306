"""
UniMorph TSV Reader/Writer
Streams `lemma<TAB>form<TAB>features[<TAB>morph|morph|...]` rows. Per-row
problems come out of the stream as Diagnostic values; only I/O errors raise.
"""
import unicodedata
from enum import Enum
from typing import Iterable, Iterator, Optional, TextIO, Union

from unimorph_kit.dataset.records import Diagnostic, InflectionRecord, Severity
from unimorph_kit.schema.features import (
    FeatureSyntaxError,
    ParseMode,
    parse_features,
    serialize,
)
from unimorph_kit.schema.inventory import Inventory
from unimorph_kit.utils.tsv import strip_newline


class SchemaMode(str, Enum):
    FLAT = "flat"
    HIERARCHICAL = "hierarchical"
    AUTO = "auto"


InflectionItem = Union[InflectionRecord, Diagnostic]


def read_inflections(
    lines: Iterable[str],
    schema_mode: SchemaMode = SchemaMode.AUTO,
    parse_mode: ParseMode = ParseMode.LAX,
    path: Optional[str] = None,
    require_nfc: bool = True,
    inventory: Optional[Inventory] = None,
) -> Iterator[InflectionItem]:
    """
    Parse inflection rows lazily.

    Four-column rows split the last column on '|' into morphs and keep the
    features column verbatim as `feature_segmentation` when it contains '|'.
    In auto mode each row's schema is taken from its own feature string.
    """

    def problem(line_number: int, code: str, message: str,
                severity: Severity = Severity.ERROR) -> Diagnostic:
        return Diagnostic(line_number=line_number, severity=severity, code=code,
                          message=message, path=path)

    for line_number, raw in enumerate(lines, start=1):
        line = strip_newline(raw)
        if not line.strip():
            continue
        columns = line.split("\t")
        if len(columns) not in (3, 4):
            yield problem(line_number, "BadColumnCount", f"expected 3 or 4 columns, found {len(columns)}")
            continue
        if any(not column.strip() for column in columns):
            yield problem(line_number, "EmptyField", "row has an empty field")
            continue
        if require_nfc and unicodedata.normalize("NFC", line) != line:
            yield problem(line_number, "NotNFC", "row is not in Unicode NFC", Severity.WARNING)

        lemma, form, features_text = columns[0], columns[1], columns[2]
        segmentation: Optional[tuple[str, ...]] = None
        feature_segmentation: Optional[str] = None
        slots = features_text.split("|")
        if len(columns) == 4:
            segmentation = tuple(columns[3].split("|"))
            if any(not morph for morph in segmentation):
                yield problem(line_number, "EmptyMorph", "segmentation contains an empty morph")
                continue
            if len(slots) > 1:
                feature_segmentation = features_text
                if len(slots) > len(segmentation):
                    yield problem(
                        line_number,
                        "FeatureSegmentationMisaligned",
                        f"{len(slots)} feature slots for {len(segmentation)} morphs",
                    )
                    continue

        try:
            bundle = parse_features(
                ";".join(slot for slot in slots if slot.strip()), mode=parse_mode, inventory=inventory
            )
        except FeatureSyntaxError as exc:
            yield problem(line_number, "FeatureParseError", str(exc))
            continue

        if schema_mode != SchemaMode.AUTO and bundle.schema_kind.value != schema_mode.value:
            yield problem(
                line_number,
                "SchemaMismatch",
                f"{features_text} is {bundle.schema_kind.value}, expected {schema_mode.value}",
            )
            continue

        yield InflectionRecord(
            lemma=lemma,
            form=form,
            features=bundle,
            segmentation=segmentation,
            feature_segmentation=feature_segmentation,
            line_number=line_number,
        )


def format_inflection(record: InflectionRecord) -> str:
    """Render one record as a TSV line without the newline."""
    if record.segmentation:
        features = record.feature_segmentation or serialize(record.features)
        return "\t".join((record.lemma, record.form, features, "|".join(record.segmentation)))
    return "\t".join((record.lemma, record.form, serialize(record.features)))


def write_inflections(records: Iterable[InflectionRecord], stream: TextIO) -> int:
    """Write records as LF-terminated TSV; returns the number of rows written."""
    count = 0
    for record in records:
        stream.write(format_inflection(record) + "\n")
        count += 1
    return count
