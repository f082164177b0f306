"""Inflection-class inference by pattern unification."""
from unimorph_kit.paradigms.inference import (
    ParadigmClass,
    ParadigmMatch,
    infer_classes,
    load_paradigm_inventory,
    match_lemma,
)
from unimorph_kit.paradigms.patterns import Binding, FormPattern, match_cell

__all__ = [
    "Binding",
    "FormPattern",
    "ParadigmClass",
    "ParadigmMatch",
    "infer_classes",
    "load_paradigm_inventory",
    "match_cell",
    "match_lemma",
]
