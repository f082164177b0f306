"""Evaluation of UniMorph data against Universal Dependencies treebanks."""
from unimorph_kit.evaluation.conllu import UDToken, read_conllu
from unimorph_kit.evaluation.mapping import (
    MappingProfile,
    UnmappedUPOS,
    load_mapping_profile,
    map_ud_to_unimorph,
)
from unimorph_kit.evaluation.metrics import (
    EvalCounts,
    EvalReport,
    UniMorphIndex,
    build_index,
    evaluate,
    f_measure,
    render_report_table,
    render_report_tsv,
)

__all__ = [
    "EvalCounts",
    "EvalReport",
    "MappingProfile",
    "UDToken",
    "UniMorphIndex",
    "UnmappedUPOS",
    "build_index",
    "evaluate",
    "f_measure",
    "load_mapping_profile",
    "map_ud_to_unimorph",
    "read_conllu",
    "render_report_table",
    "render_report_tsv",
]
