"""
Morpheme Tables
Language-specific networks of edges from a base cell to derived cells, each
labelled with the allomorphs that realise the step, plus custom segmentation
overrides and the stem-alternation map.
"""
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from unimorph_kit.errors import ResourceError
from unimorph_kit.schema.features import (
    FeatureBundle,
    FeatureSyntaxError,
    ParseMode,
    bundle_key,
    parse_features,
    serialize,
)
from unimorph_kit.schema.inventory import Inventory
from unimorph_kit.utils.tsv import read_rows


class AffixKind(str, Enum):
    SUFFIX = "suffix"
    PREFIX = "prefix"


class MorphemeEdge(BaseModel):
    """One step in the inflection network: source cell + allomorph -> target cell."""

    model_config = ConfigDict(frozen=True)

    source: FeatureBundle
    target: FeatureBundle
    allomorphs: tuple[str, ...] = Field(min_length=1)
    kind: AffixKind = AffixKind.SUFFIX

    @field_validator("allomorphs")
    @classmethod
    def _non_empty(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if any(not a for a in value):
            raise ValueError("allomorphs must be non-empty strings")
        return value

    @model_validator(mode="after")
    def _distinct_cells(self) -> "MorphemeEdge":
        if bundle_key(self.source) == bundle_key(self.target):
            raise ValueError(f"edge source and target are both {serialize(self.source)}")
        return self

    def display(self, allomorph: str) -> str:
        return f"-{allomorph}" if self.kind == AffixKind.SUFFIX else f"{allomorph}-"


class MorphemeTable(BaseModel):
    """
    The edges of one language's inflection network. Roots default to the
    source cells that are never the target of an edge.
    """

    model_config = ConfigDict(frozen=True)

    edges: tuple[MorphemeEdge, ...]
    roots: tuple[FeatureBundle, ...] = ()

    _incoming: dict[str, list[MorphemeEdge]] = PrivateAttr(default_factory=dict)
    _root_keys: frozenset[str] = PrivateAttr(default_factory=frozenset)

    def model_post_init(self, __context: Any) -> None:
        incoming: dict[str, list[MorphemeEdge]] = {}
        for edge in self.edges:
            incoming.setdefault(bundle_key(edge.target), []).append(edge)
        self._incoming = incoming
        if self.roots:
            self._root_keys = frozenset(bundle_key(r) for r in self.roots)
        else:
            sources = {bundle_key(e.source) for e in self.edges}
            self._root_keys = frozenset(sources - set(incoming))

    @property
    def root_keys(self) -> frozenset[str]:
        return self._root_keys

    def is_root(self, bundle: FeatureBundle) -> bool:
        return bundle_key(bundle) in self._root_keys

    def edges_into(self, bundle: FeatureBundle) -> list[MorphemeEdge]:
        return list(self._incoming.get(bundle_key(bundle), ()))

    def knows(self, bundle: FeatureBundle) -> bool:
        key = bundle_key(bundle)
        return key in self._root_keys or key in self._incoming

    def reaches_root(self, bundle: FeatureBundle) -> bool:
        """Whether some chain of edges leads from a root to this cell."""
        pending = [bundle_key(bundle)]
        visited: set[str] = set()
        while pending:
            key = pending.pop()
            if key in self._root_keys:
                return True
            if key in visited:
                continue
            visited.add(key)
            pending.extend(bundle_key(e.source) for e in self._incoming.get(key, ()))
        return False

    def find_cycle(self) -> Optional[list[str]]:
        """Return one cycle of cell keys (target -> source direction), or None."""
        state: dict[str, int] = {}
        stack: list[str] = []

        def visit(key: str) -> Optional[list[str]]:
            state[key] = 1
            stack.append(key)
            for edge in self._incoming.get(key, ()):
                source = bundle_key(edge.source)
                if state.get(source) == 1:
                    return stack[stack.index(source):] + [source]
                if source not in state:
                    found = visit(source)
                    if found:
                        return found
            stack.pop()
            state[key] = 2
            return None

        for key in sorted(self._incoming):
            if key not in state:
                found = visit(key)
                if found:
                    return found
        return None


class OverrideRule(BaseModel):
    """A hand-written segmentation for an irregular form."""

    model_config = ConfigDict(frozen=True)

    form: str = Field(min_length=1)
    features: FeatureBundle
    segmentation: tuple[str, ...] = Field(min_length=1)
    feature_segmentation: Optional[str] = None

    @model_validator(mode="after")
    def _spells_form(self) -> "OverrideRule":
        if "".join(self.segmentation) != self.form:
            raise ValueError(f"morphs {'|'.join(self.segmentation)} do not spell {self.form}")
        return self


class StemMap(BaseModel):
    """Surface stem -> display stem, e.g. legy -> légy."""

    model_config = ConfigDict(frozen=True)

    mapping: dict[str, str] = Field(default_factory=dict)

    def display(self, surface: str) -> str:
        return self.mapping.get(surface, surface)


def _parse_cell(text: str, inventory: Optional[Inventory], where: str) -> FeatureBundle:
    try:
        return parse_features(text, mode=ParseMode.LAX, inventory=inventory)
    except FeatureSyntaxError as exc:
        raise ResourceError(f"{where}: {exc}") from exc


def load_morpheme_table(path: str | Path, inventory: Optional[Inventory] = None) -> MorphemeTable:
    """
    Load `source<TAB>-a;-b;...<TAB>target[<TAB>suffix|prefix]` rows. Display
    hyphens around allomorphs are stripped.
    """
    edges: list[MorphemeEdge] = []
    for line_number, columns in read_rows(path):
        where = f"{path}:{line_number}"
        if len(columns) not in (3, 4):
            raise ResourceError(f"{where}: expected 3 or 4 columns, got {len(columns)}")
        kind = AffixKind.SUFFIX
        if len(columns) == 4:
            try:
                kind = AffixKind(columns[3].lower())
            except ValueError as exc:
                raise ResourceError(f"{where}: unknown affix kind {columns[3]!r}") from exc
        allomorphs = tuple(a.strip().strip("-") for a in columns[1].split(";") if a.strip())
        try:
            edges.append(MorphemeEdge(
                source=_parse_cell(columns[0], inventory, where),
                target=_parse_cell(columns[2], inventory, where),
                allomorphs=allomorphs,
                kind=kind,
            ))
        except ValueError as exc:
            raise ResourceError(f"{where}: {exc}") from exc
    table = MorphemeTable(edges=tuple(edges))
    cycle = table.find_cycle()
    if cycle:
        logger.warning(f"Morpheme table {path} has a cycle: {' <- '.join(cycle)}")
    logger.debug(f"Loaded {len(edges)} morpheme edges from {path}")
    return table


def load_overrides(path: str | Path, inventory: Optional[Inventory] = None) -> list[OverrideRule]:
    """Load `form<TAB>features<TAB>morph|morph|...[<TAB>feature-segmentation]` rows."""
    rules: list[OverrideRule] = []
    for line_number, columns in read_rows(path):
        where = f"{path}:{line_number}"
        if len(columns) not in (3, 4):
            raise ResourceError(f"{where}: expected 3 or 4 columns, got {len(columns)}")
        try:
            rules.append(OverrideRule(
                form=columns[0],
                features=_parse_cell(columns[1], inventory, where),
                segmentation=tuple(columns[2].split("|")),
                feature_segmentation=columns[3] if len(columns) == 4 else None,
            ))
        except ValueError as exc:
            raise ResourceError(f"{where}: {exc}") from exc
    return rules


def load_stem_map(path: str | Path) -> StemMap:
    """Load `surface<TAB>display` rows."""
    mapping: dict[str, str] = {}
    for line_number, columns in read_rows(path):
        if len(columns) != 2:
            raise ResourceError(f"{path}:{line_number}: expected 2 columns, got {len(columns)}")
        mapping[columns[0]] = columns[1]
    return StemMap(mapping=mapping)
