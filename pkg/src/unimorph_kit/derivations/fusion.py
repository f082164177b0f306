"""
Derivation Fusion
Merges preliminary derivation records describing the same (language, source,
target) pair into one record per pair.
"""
from collections import defaultdict
from typing import Iterable, Optional

from pydantic import BaseModel, Field

from unimorph_kit.dataset.records import Diagnostic, Severity
from unimorph_kit.derivations.records import DerivationRecord

MERGED_FIELDS = ("source_pos", "target_pos", "affix")


class FusionResult(BaseModel):
    records: list[DerivationRecord] = Field(default_factory=list)
    diagnostics: list[Diagnostic] = Field(default_factory=list)


def fuse(preliminary: Iterable[DerivationRecord], path: Optional[str] = None) -> FusionResult:
    """
    Group records by (language, source, target) and merge each field to its
    unique non-missing value. A field with conflicting values is left missing
    and reported as FieldConflict at the group's first position in the input.
    """
    groups: dict[tuple[str, str, str], list[DerivationRecord]] = defaultdict(list)
    first_seen: dict[tuple[str, str, str], int] = {}
    for position, record in enumerate(preliminary, start=1):
        groups[record.sort_key].append(record)
        first_seen.setdefault(record.sort_key, position)

    result = FusionResult()
    for key in sorted(groups):
        language, source, target = key
        merged: dict[str, Optional[str]] = {}
        for field in MERGED_FIELDS:
            values = sorted({getattr(r, field) for r in groups[key] if getattr(r, field) is not None})
            if len(values) > 1:
                result.diagnostics.append(Diagnostic(
                    line_number=first_seen[key],
                    severity=Severity.WARNING,
                    code="FieldConflict",
                    message=f"{language} {source} -> {target}: {field} is one of {', '.join(values)}",
                    path=path,
                ))
            merged[field] = values[0] if len(values) == 1 else None
        result.records.append(DerivationRecord(source=source, target=target, language=language, **merged))
    return result
