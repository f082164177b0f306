"""Derivation records: fusion, affix inference and statistics."""
from unimorph_kit.derivations.affixes import (
    AffixInference,
    Confidence,
    DerivationError,
    DerivationStats,
    NoRelation,
    derivation_stats,
    infer_affix,
    validate_affix,
)
from unimorph_kit.derivations.fusion import FusionResult, fuse
from unimorph_kit.derivations.records import (
    AffixOrientation,
    DerivationRecord,
    format_derivation,
    read_derivations,
    write_derivations,
)

__all__ = [
    "AffixInference",
    "AffixOrientation",
    "Confidence",
    "DerivationError",
    "DerivationRecord",
    "DerivationStats",
    "FusionResult",
    "NoRelation",
    "derivation_stats",
    "format_derivation",
    "fuse",
    "infer_affix",
    "read_derivations",
    "validate_affix",
    "write_derivations",
]
