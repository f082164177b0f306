"""
UniMorph Feature Inventory
The closed set of feature tags, the dimension each belongs to, and the
canonical order of dimensions and of tags within a dimension.
"""
import re
from functools import lru_cache
from pathlib import Path
from typing import Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from unimorph_kit.errors import ResourceError
from unimorph_kit.resources import resource_path
from unimorph_kit.utils.tsv import read_rows

PART_OF_SPEECH = "PartOfSpeech"
CASE = "Case"
PERSON = "Person"
NUMBER = "Number"
GENDER = "Gender"
POSSESSION = "Possession"
ARGUMENT_MARKING = "ArgumentMarking"
LANGUAGE_SPECIFIC = "LanguageSpecific"
UNKNOWN = "Unknown"

# Dimensions whose tags may head a composite feature.
COMPOSITE_HEAD_DIMENSIONS = frozenset({CASE, POSSESSION})

TAG_TEXT = re.compile(r"^[A-Z0-9+.]+$")
_LGSPEC = re.compile(r"^LGSPEC\d*$")
_ARG_PREFIX = "ARG"


class Dimension(BaseModel):
    """A grouping of mutually related feature tags."""

    model_config = ConfigDict(frozen=True)

    id: str
    canonical_rank: int = Field(ge=0, description="Position in the canonical dimension order")


class FeatureTag(BaseModel):
    """
    A single feature label such as NOM or PL.

    `key` is the tag's identity: argument-marking tags are the same tag with or
    without their ARG prefix, so ARGNO1S and NO1S share the key NO1S.
    """

    model_config = ConfigDict(frozen=True)

    text: str
    dimension: Dimension
    rank: int = Field(default=0, ge=0, description="Position within the dimension")
    key: str

    @property
    def known(self) -> bool:
        return self.dimension.id != UNKNOWN

    def __str__(self) -> str:
        return self.text


class Inventory:
    """Lookup table from tag text to FeatureTag."""

    def __init__(self, dimensions: list[str], tags: list[tuple[str, str]], version: str = "unknown"):
        self.version = version
        self.dimensions: dict[str, Dimension] = {
            name: Dimension(id=name, canonical_rank=rank) for rank, name in enumerate(dimensions)
        }
        if LANGUAGE_SPECIFIC not in self.dimensions:
            self.dimensions[LANGUAGE_SPECIFIC] = Dimension(
                id=LANGUAGE_SPECIFIC, canonical_rank=len(self.dimensions)
            )
        self.unknown = Dimension(id=UNKNOWN, canonical_rank=len(self.dimensions))

        self._tags: dict[str, FeatureTag] = {}
        ranks: dict[str, int] = {}
        for text, dimension_id in tags:
            dimension = self.dimensions.get(dimension_id)
            if dimension is None:
                raise ResourceError(f"tag {text} names undeclared dimension {dimension_id}")
            key = self._strip_arg(text, dimension_id)
            if key in self._tags:
                raise ResourceError(f"tag {text} declared twice")
            rank = ranks.get(dimension_id, 0)
            ranks[dimension_id] = rank + 1
            self._tags[key] = FeatureTag(text=key, dimension=dimension, rank=rank, key=key)

    @staticmethod
    def _strip_arg(text: str, dimension_id: str) -> str:
        if dimension_id == ARGUMENT_MARKING and text.startswith(_ARG_PREFIX) and len(text) > 3:
            return text[len(_ARG_PREFIX):]
        return text

    def __contains__(self, text: str) -> bool:
        return self.lookup(text) is not None

    def __len__(self) -> int:
        return len(self._tags)

    def lookup(self, text: str) -> Optional[FeatureTag]:
        """Resolve tag text, or None when the tag is not in the inventory."""
        text = text.upper()
        if text.startswith(_ARG_PREFIX):
            entry = self._tags.get(text[len(_ARG_PREFIX):])
            if entry is not None and entry.dimension.id == ARGUMENT_MARKING:
                return entry.model_copy(update={"text": text})
        entry = self._tags.get(text)
        if entry is not None:
            return entry
        if "+" in text:
            parts = [self.lookup(part) for part in text.split("+") if part]
            if parts and all(p is not None for p in parts):
                dims = {p.dimension.id for p in parts}
                if len(dims) == 1:
                    return FeatureTag(
                        text=text, dimension=parts[0].dimension, rank=parts[0].rank, key=text
                    )
        if _LGSPEC.match(text):
            return FeatureTag(text=text, dimension=self.dimensions[LANGUAGE_SPECIFIC], key=text)
        return None

    def resolve(self, text: str) -> FeatureTag:
        """Resolve tag text, placing unknown tags in the Unknown dimension."""
        tag = self.lookup(text)
        if tag is not None:
            return tag
        text = text.upper()
        return FeatureTag(text=text, dimension=self.unknown, key=text)

    @classmethod
    def from_file(cls, path: str | Path) -> "Inventory":
        """Load an inventory TSV: '@version', '@dimensions' headers then TAG<TAB>DIMENSION rows."""
        version = "unknown"
        dimensions: list[str] = []
        tags: list[tuple[str, str]] = []
        for line_number, columns in read_rows(path):
            if len(columns) != 2:
                raise ResourceError(f"{path}:{line_number}: expected 2 columns, got {len(columns)}")
            name, value = columns
            if name == "@version":
                version = value
            elif name == "@dimensions":
                dimensions = [d.strip() for d in value.split(",") if d.strip()]
            elif not TAG_TEXT.match(name):
                raise ResourceError(f"{path}:{line_number}: invalid tag text {name!r}")
            else:
                tags.append((name, value))
        if not dimensions:
            raise ResourceError(f"{path}: missing @dimensions header")
        inventory = cls(dimensions, tags, version=version)
        logger.debug(f"Loaded inventory {version} with {len(inventory)} tags from {path}")
        return inventory


@lru_cache(maxsize=1)
def default_inventory() -> Inventory:
    """The shipped UniMorph 4.0 inventory."""
    return Inventory.from_file(resource_path("inventory.tsv"))
