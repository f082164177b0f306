"""
Affix Inference
Recovers the affix relating a source lemma to its derivative and checks
recorded affixes against the lemma pair.
"""
from collections import defaultdict
from enum import Enum
from os.path import commonprefix
from typing import Iterable

from pydantic import BaseModel, ConfigDict

from unimorph_kit.derivations.records import (
    AffixOrientation,
    DerivationRecord,
    affix_orientation,
    bare_affix,
)
from unimorph_kit.errors import UniMorphError


class DerivationError(UniMorphError):
    code = "DerivationError"


class NoRelation(DerivationError):
    code = "NoRelation"


class Confidence(str, Enum):
    EXACT = "exact"
    TRUNCATING = "truncating"
    WEAK = "weak"


class AffixInference(BaseModel):
    model_config = ConfigDict(frozen=True)

    affix: str
    orientation: AffixOrientation
    confidence: Confidence

    @property
    def display(self) -> str:
        """Hyphenated form: '-ico' for suffixes, 'sus-' for prefixes."""
        if self.orientation == AffixOrientation.SUFFIX:
            return f"-{self.affix}"
        return f"{self.affix}-"


def _common_suffix(a: str, b: str) -> str:
    return commonprefix([a[::-1], b[::-1]])[::-1]


def infer_affix(source: str, target: str, min_prefix: int = 3, slack: int = 3) -> AffixInference:
    """
    Find the affix that turns `source` into `target`.

    Exact prefixation and suffixation are tried first. A long shared prefix
    (at least max(min_prefix, len(source) - slack)) means a suffix replaced
    stem-final material of the source. Anything else is a weak guess: the
    longer of the two residues left by a non-empty shared prefix or suffix.
    """
    if not source or not target or source == target:
        raise DerivationError("source and target must be distinct non-empty strings", code="InvalidPair")
    if target.endswith(source) and len(target) > len(source):
        return AffixInference(affix=target[: len(target) - len(source)],
                              orientation=AffixOrientation.PREFIX, confidence=Confidence.EXACT)
    if target.startswith(source) and len(target) > len(source):
        return AffixInference(affix=target[len(source):],
                              orientation=AffixOrientation.SUFFIX, confidence=Confidence.EXACT)

    prefix = commonprefix([source, target])
    suffix = _common_suffix(source, target)
    if not prefix and not suffix:
        raise NoRelation(f"{source} and {target} share neither a prefix nor a suffix")

    if prefix and len(prefix) >= max(min_prefix, len(source) - slack) and len(target) > len(prefix):
        return AffixInference(affix=target[len(prefix):],
                              orientation=AffixOrientation.SUFFIX, confidence=Confidence.TRUNCATING)

    candidates = []
    if prefix and len(target) > len(prefix):
        candidates.append((len(target) - len(prefix), 1, target[len(prefix):], AffixOrientation.SUFFIX))
    if suffix and len(target) > len(suffix):
        candidates.append((len(target) - len(suffix), 0, target[: len(target) - len(suffix)],
                           AffixOrientation.PREFIX))
    if not candidates:
        raise NoRelation(f"{target} adds no material to what it shares with {source}")
    _, _, affix, orientation = max(candidates)
    return AffixInference(affix=affix, orientation=orientation, confidence=Confidence.WEAK)


def validate_affix(record: DerivationRecord, min_prefix: int = 3, slack: int = 3) -> bool:
    """
    Whether the recorded affix fits the pair. A suffix may replace the end of
    the source: 'morfologico' = 'morfologi' + 'ico' where 'morfologi' begins
    'morfologia', and 'morfologicamente' = 'morfologica' + 'mente' where
    'morfologica' differs from 'morfologico' only within the truncation slack.
    """
    if not record.affix:
        return False
    orientation = affix_orientation(record.affix)
    affix = bare_affix(record.affix)
    if orientation == AffixOrientation.PREFIX:
        return record.target.startswith(affix)
    if orientation == AffixOrientation.SUFFIX:
        if not record.target.endswith(affix):
            return False
        stem = record.target[: len(record.target) - len(affix)]
        if record.source.startswith(stem):
            return True
        shared = len(commonprefix([stem, record.source]))
        return shared >= max(min_prefix, len(record.source) - slack) and len(stem) - shared <= slack
    return False


class DerivationStats(BaseModel):
    language: str
    lemma_count: int = 0
    derivation_count: int = 0
    morpheme_count: int = 0


def derivation_stats(records: Iterable[DerivationRecord]) -> dict[str, DerivationStats]:
    """Distinct lemmas, records and distinct (affix, orientation) pairs per language."""
    lemmas: dict[str, set[str]] = defaultdict(set)
    counts: dict[str, int] = defaultdict(int)
    morphemes: dict[str, set[tuple[str, str]]] = defaultdict(set)
    for record in records:
        lemmas[record.language].update((record.source, record.target))
        counts[record.language] += 1
        if record.affix:
            orientation = affix_orientation(record.affix)
            morphemes[record.language].add(
                (bare_affix(record.affix), orientation.value if orientation else "")
            )
    return {
        language: DerivationStats(
            language=language,
            lemma_count=len(lemmas[language]),
            derivation_count=counts[language],
            morpheme_count=len(morphemes[language]),
        )
        for language in sorted(counts)
    }
