"""UniMorph inflection datasets: reading, writing, validation and statistics."""
from unimorph_kit.dataset.reader import (
    InflectionItem,
    SchemaMode,
    format_inflection,
    read_inflections,
    write_inflections,
)
from unimorph_kit.dataset.records import (
    DatasetStats,
    Diagnostic,
    InflectionRecord,
    PosCounts,
    Severity,
)
from unimorph_kit.dataset.validate import StatsCollector, ValidationResult, compute_stats, validate_dataset

__all__ = [
    "DatasetStats",
    "Diagnostic",
    "InflectionItem",
    "InflectionRecord",
    "PosCounts",
    "SchemaMode",
    "Severity",
    "StatsCollector",
    "ValidationResult",
    "compute_stats",
    "format_inflection",
    "read_inflections",
    "validate_dataset",
    "write_inflections",
]
