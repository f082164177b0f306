"""
Language Profiles
Per-language settings that drive conversion between the flat and the
hierarchical feature schema.
"""
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

from unimorph_kit.errors import ResourceError
from unimorph_kit.resources import resolve_named
from unimorph_kit.schema.features import (
    FeatureNode,
    FeatureSyntaxError,
    ParseMode,
    _canonical_node,
    parse_features,
    serialize_node,
)
from unimorph_kit.schema.inventory import (
    ARGUMENT_MARKING,
    CASE,
    POSSESSION,
    FeatureTag,
    Inventory,
    default_inventory,
)
from unimorph_kit.utils.tsv import read_rows

_SETTINGS = {"language", "extends", "default_core_case", "case_wraps_nominal", "verbal_pos"}


class LanguageProfile(BaseModel):
    """
    Conversion settings for one language.

    `composite_argument_map` maps the key of a flat composite tag (e.g. NO1P for
    ARGNO1P, or PSS3SF) to the hierarchical node it stands for. The map is
    injective so the reverse direction is well defined.
    """

    model_config = ConfigDict(frozen=True)

    language: str = "und"
    default_core_case: FeatureTag
    case_wraps_nominal: bool = False
    verbal_pos: frozenset[str] = Field(default_factory=frozenset)
    composite_argument_map: dict[str, FeatureNode] = Field(default_factory=dict)
    spellings: dict[str, str] = Field(
        default_factory=dict, description="Flat spelling for each map key, e.g. NO1P -> ARGNO1P"
    )

    _reverse: dict[str, str] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context: Any) -> None:
        reverse: dict[str, str] = {}
        for key, node in self.composite_argument_map.items():
            identity = serialize_node(_canonical_node(node), keys=True)
            if identity in reverse:
                raise ResourceError(
                    f"profile {self.language}: {key} and {reverse[identity]} both map to {identity}"
                )
            reverse[identity] = key
        self._reverse = reverse

    def expand(self, tag: FeatureTag) -> Optional[FeatureNode]:
        """The hierarchical node for a flat composite tag, or None."""
        return self.composite_argument_map.get(tag.key)

    def collapse(self, node: FeatureNode) -> Optional[str]:
        """The flat spelling of a hierarchical argument or possessor node, or None."""
        key = self._reverse.get(serialize_node(_canonical_node(node), keys=True))
        if key is None:
            return None
        return self.spellings.get(key, key)

    def is_verbal(self, pos: Optional[FeatureTag]) -> bool:
        return pos is not None and pos.key in self.verbal_pos


def _parse_bool(value: str, path: Path, line_number: int) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ResourceError(f"{path}:{line_number}: expected a boolean, got {value!r}")


def _read_profile_rows(path: Path, inventory: Inventory, seen: tuple[Path, ...] = ()) -> dict[str, Any]:
    if path in seen:
        raise ResourceError(f"profile {path} extends itself")
    if not path.exists():
        raise ResourceError(f"profile not found: {path}")
    data: dict[str, Any] = {"composites": {}, "spellings": {}}
    for line_number, columns in read_rows(path):
        if len(columns) != 2:
            raise ResourceError(f"{path}:{line_number}: expected 2 columns, got {len(columns)}")
        name, value = columns
        if name == "extends":
            parent = resolve_named(value, "profiles")
            if not parent.exists():
                parent = path.parent / f"{value}.tsv"
            inherited = _read_profile_rows(parent, inventory, seen + (path,))
            for key, node in inherited.pop("composites").items():
                data["composites"].setdefault(key, node)
            for key, text in inherited.pop("spellings").items():
                data["spellings"].setdefault(key, text)
            for key, inherited_value in inherited.items():
                data.setdefault(key, inherited_value)
        elif name in _SETTINGS:
            data[name] = (value, line_number)
        else:
            tag = inventory.lookup(name)
            if tag is None or tag.dimension.id not in (ARGUMENT_MARKING, POSSESSION):
                raise ResourceError(f"{path}:{line_number}: {name} is not a composite flat tag")
            try:
                bundle = parse_features(value, mode=ParseMode.STRICT, inventory=inventory)
            except FeatureSyntaxError as exc:
                raise ResourceError(f"{path}:{line_number}: {exc}") from exc
            if len(bundle.nodes) != 1 or bundle.nodes[0].is_atomic:
                raise ResourceError(f"{path}:{line_number}: {value} is not a single composite node")
            node = bundle.nodes[0]
            if node.dimension not in (CASE, POSSESSION):
                raise ResourceError(f"{path}:{line_number}: {node.head.text} is not a role tag")
            data["composites"][tag.key] = node
            data["spellings"][tag.key] = tag.text
    return data


def load_profile(name_or_path: str | Path, inventory: Optional[Inventory] = None) -> LanguageProfile:
    """Load a profile by file path or by shipped language code (e.g. 'tur')."""
    inventory = inventory or default_inventory()
    path = resolve_named(name_or_path, "profiles")
    data = _read_profile_rows(path, inventory)

    def setting(name: str, default: str) -> tuple[str, int]:
        return data.get(name, (default, 0))

    core_text, core_line = setting("default_core_case", "NOM")
    core = inventory.lookup(core_text)
    if core is None or core.dimension.id != CASE:
        raise ResourceError(f"{path}:{core_line}: default_core_case {core_text} is not a case tag")
    wraps_text, wraps_line = setting("case_wraps_nominal", "false")
    verbal_text, _ = setting("verbal_pos", "V")
    language, _ = setting("language", Path(path).stem)

    profile = LanguageProfile(
        language=language,
        default_core_case=core,
        case_wraps_nominal=_parse_bool(wraps_text, path, wraps_line),
        verbal_pos=frozenset(p.strip().upper() for p in verbal_text.split(",") if p.strip()),
        composite_argument_map=data["composites"],
        spellings=data["spellings"],
    )
    logger.debug(
        f"Loaded profile {profile.language} from {path} "
        f"({len(profile.composite_argument_map)} composite tags)"
    )
    return profile


@lru_cache(maxsize=None)
def get_profile(language: str) -> LanguageProfile:
    """A shipped profile by language code, cached."""
    return load_profile(language)
