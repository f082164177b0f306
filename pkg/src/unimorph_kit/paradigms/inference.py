"""
Paradigm Class Inference
Finds the inflection classes whose cell patterns generate every observed
(form, features) pair of a lemma under one shared variable binding.
"""
from collections import Counter
from pathlib import Path
from typing import Iterable, Optional, Sequence

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from unimorph_kit.errors import ResourceError
from unimorph_kit.paradigms.patterns import Binding, FormPattern, match_cell
from unimorph_kit.schema.features import (
    FeatureBundle,
    FeatureSyntaxError,
    ParseMode,
    bundle_key,
    parse_features,
)
from unimorph_kit.schema.inventory import Inventory
from unimorph_kit.utils.tsv import read_rows

Triple = tuple[str, FeatureBundle]


class ParadigmClass(BaseModel):
    """An inflection class: one form pattern per cell, keyed by canonical bundle."""

    model_config = ConfigDict(frozen=True)

    id: str
    cells: dict[str, FormPattern] = Field(description="bundle_key -> pattern")

    def pattern_for(self, features: FeatureBundle) -> Optional[FormPattern]:
        return self.cells.get(bundle_key(features))


class ParadigmMatch(BaseModel):
    model_config = ConfigDict(frozen=True)

    class_id: str
    binding: dict[int, str]


def _ordered(triples: Iterable[Triple]) -> list[tuple[str, str]]:
    return sorted({(bundle_key(features), form) for form, features in triples})


def match_lemma(triples: Sequence[Triple], paradigm: ParadigmClass, lenient: bool = False) -> list[ParadigmMatch]:
    """
    All bindings under which `paradigm` generates every triple.

    A triple whose bundle has no cell in the class makes the class fail; in
    lenient mode such triples are ignored instead, and a class that covers
    none of the triples still fails.
    """
    observations: list[tuple[str, FormPattern]] = []
    for key, form in _ordered(triples):
        pattern = paradigm.cells.get(key)
        if pattern is None:
            if lenient:
                continue
            return []
        observations.append((form, pattern))
    if not observations:
        return []

    bindings: list[Binding] = [{}]
    for form, pattern in observations:
        extended: list[Binding] = []
        for binding in bindings:
            extended.extend(match_cell(form, pattern, binding))
        if not extended:
            return []
        bindings = extended

    unique = sorted({tuple(sorted(b.items())) for b in bindings})
    return [ParadigmMatch(class_id=paradigm.id, binding=dict(items)) for items in unique]


def infer_classes(triples: Sequence[Triple], inventory: Sequence[ParadigmClass], lenient: bool = False) -> set[str]:
    """Ids of every class that matches all of a lemma's triples at once."""
    return {cls.id for cls in inventory if match_lemma(triples, cls, lenient=lenient)}


def load_paradigm_inventory(path: str | Path, inventory: Optional[Inventory] = None) -> list[ParadigmClass]:
    """
    Load `class_id<TAB>features<TAB>pattern` rows, one per cell, classes in
    file order. Adjacent variables and repeated cells are rejected; a variable
    used in only one cell is allowed with a warning.
    """
    cells: dict[str, dict[str, FormPattern]] = {}
    for line_number, columns in read_rows(path):
        where = f"{path}:{line_number}"
        if len(columns) != 3:
            raise ResourceError(f"{where}: expected 3 columns, got {len(columns)}")
        class_id, features_text, pattern_text = columns
        try:
            features = parse_features(features_text, mode=ParseMode.LAX, inventory=inventory)
            pattern = FormPattern.parse(pattern_text)
        except (FeatureSyntaxError, ValueError) as exc:
            raise ResourceError(f"{where}: {exc}") from exc
        key = bundle_key(features)
        class_cells = cells.setdefault(class_id, {})
        if key in class_cells:
            raise ResourceError(f"{where}: class {class_id} already has a cell for {key}")
        class_cells[key] = pattern

    classes = [ParadigmClass(id=class_id, cells=class_cells) for class_id, class_cells in cells.items()]
    for paradigm in classes:
        usage = Counter(v for pattern in paradigm.cells.values() for v in pattern.variables)
        singletons = sorted(v for v, count in usage.items() if count == 1)
        if singletons and len(paradigm.cells) > 1:
            logger.warning(f"Paradigm {paradigm.id}: variables {singletons} occur in a single cell")
    if not classes:
        raise ResourceError(f"{path}: paradigm inventory is empty")
    logger.debug(f"Loaded {len(classes)} paradigm classes from {path}")
    return classes
