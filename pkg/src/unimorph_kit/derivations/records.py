"""
Derivation Records
`source<TAB>target<TAB>SRCPOS:TGTPOS<TAB>affix[<TAB>language]` rows, where
missing fields are empty and the affix's hyphen side gives its orientation
('-ico' is a suffix, 'sus-' a prefix).
"""
from enum import Enum
from typing import Iterable, Iterator, Optional, TextIO, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from unimorph_kit.dataset.records import Diagnostic, Severity
from unimorph_kit.utils.tsv import strip_newline


class AffixOrientation(str, Enum):
    SUFFIX = "suffix"
    PREFIX = "prefix"


def affix_orientation(affix: str) -> Optional[AffixOrientation]:
    if len(affix) > 1 and affix.startswith("-") and not affix.endswith("-"):
        return AffixOrientation.SUFFIX
    if len(affix) > 1 and affix.endswith("-") and not affix.startswith("-"):
        return AffixOrientation.PREFIX
    return None


def bare_affix(affix: str) -> str:
    return affix.strip("-")


class DerivationRecord(BaseModel):
    """A source lemma, the lemma derived from it, and what is known about the step."""

    model_config = ConfigDict(frozen=True)

    source: str = Field(min_length=1)
    target: str = Field(min_length=1)
    source_pos: Optional[str] = None
    target_pos: Optional[str] = None
    affix: Optional[str] = Field(default=None, description="Display form, e.g. '-ico' or 'sus-'")
    language: str = "und"

    @model_validator(mode="after")
    def _distinct_lemmas(self) -> "DerivationRecord":
        if self.source == self.target:
            raise ValueError(f"source and target are both {self.source!r}")
        return self

    @property
    def complete(self) -> bool:
        return None not in (self.source_pos, self.target_pos, self.affix)

    @property
    def orientation(self) -> Optional[AffixOrientation]:
        return affix_orientation(self.affix) if self.affix else None

    @property
    def sort_key(self) -> tuple[str, str, str]:
        return (self.language, self.source, self.target)


DerivationItem = Union[DerivationRecord, Diagnostic]


def _optional(value: str) -> Optional[str]:
    value = value.strip()
    return value or None


def read_derivations(lines: Iterable[str], language: str = "und",
                     path: Optional[str] = None) -> Iterator[DerivationItem]:
    """
    Parse derivation rows. Preliminary files may leave the POS and affix
    columns empty or omit them; a fifth column overrides `language`.
    """
    for line_number, raw in enumerate(lines, start=1):
        line = strip_newline(raw)
        if not line.strip():
            continue
        columns = line.split("\t")
        if not 2 <= len(columns) <= 5:
            yield Diagnostic(line_number=line_number, severity=Severity.ERROR, code="BadColumnCount",
                             message=f"expected 2 to 5 columns, found {len(columns)}", path=path)
            continue
        columns += [""] * (5 - len(columns))
        source, target, pos_pair, affix, row_language = columns
        source_pos = target_pos = None
        if pos_pair.strip():
            if pos_pair.count(":") != 1:
                yield Diagnostic(line_number=line_number, severity=Severity.ERROR, code="BadPOSPair",
                                 message=f"expected SRCPOS:TGTPOS, found {pos_pair!r}", path=path)
                continue
            left, right = pos_pair.split(":")
            source_pos, target_pos = _optional(left), _optional(right)
        try:
            yield DerivationRecord(
                source=source.strip(),
                target=target.strip(),
                source_pos=source_pos,
                target_pos=target_pos,
                affix=_optional(affix),
                language=_optional(row_language) or language,
            )
        except ValidationError as exc:
            yield Diagnostic(line_number=line_number, severity=Severity.ERROR, code="InvalidDerivation",
                             message=exc.errors()[0]["msg"], path=path)


def format_derivation(record: DerivationRecord, with_language: bool = False) -> str:
    pos_pair = ""
    if record.source_pos or record.target_pos:
        pos_pair = f"{record.source_pos or ''}:{record.target_pos or ''}"
    columns = [record.source, record.target, pos_pair, record.affix or ""]
    if with_language:
        columns.append(record.language)
    return "\t".join(columns)


def write_derivations(records: Iterable[DerivationRecord], stream: TextIO, with_language: bool = False) -> int:
    count = 0
    for record in records:
        stream.write(format_derivation(record, with_language) + "\n")
        count += 1
    return count
