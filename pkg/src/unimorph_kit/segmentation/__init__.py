"""Morpheme tables and recursive segmentation of inflected forms."""
from unimorph_kit.segmentation.segmenter import (
    CycleDetected,
    EmptyStem,
    NoMatchingAllomorph,
    NoPath,
    Segmentation,
    SegmentationError,
    Segmenter,
    align_feature_segmentation,
    feature_slots,
    non_monotonic_edges,
    segment,
    segment_all,
    segment_dataset,
)
from unimorph_kit.segmentation.table import (
    AffixKind,
    MorphemeEdge,
    MorphemeTable,
    OverrideRule,
    StemMap,
    load_morpheme_table,
    load_overrides,
    load_stem_map,
)

__all__ = [
    "AffixKind",
    "CycleDetected",
    "EmptyStem",
    "MorphemeEdge",
    "MorphemeTable",
    "NoMatchingAllomorph",
    "NoPath",
    "OverrideRule",
    "Segmentation",
    "SegmentationError",
    "Segmenter",
    "StemMap",
    "align_feature_segmentation",
    "feature_slots",
    "load_morpheme_table",
    "load_overrides",
    "load_stem_map",
    "non_monotonic_edges",
    "segment",
    "segment_all",
    "segment_dataset",
]
