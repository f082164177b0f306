"""
UD to UniMorph Mapping
Per-language mapping profiles (`UPOS<TAB>TAG`, `Key=Value<TAB>TAG|DROP`) and the
conversion of UD tokens into flat UniMorph bundles.
"""
from pathlib import Path
from typing import Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from unimorph_kit.errors import ResourceError, UniMorphError
from unimorph_kit.evaluation.conllu import UDToken
from unimorph_kit.resources import resolve_named
from unimorph_kit.schema.features import FeatureBundle, FeatureNode, canonicalize
from unimorph_kit.schema.inventory import Inventory, default_inventory
from unimorph_kit.utils.tsv import read_rows

DROP = "DROP"


class UnmappedUPOS(UniMorphError):
    code = "UnmappedUPOS"


class MappingProfile(BaseModel):
    """`feat_map` values are tag tuples; an empty tuple drops the feature."""

    model_config = ConfigDict(frozen=True)

    language: str = "und"
    upos_map: dict[str, str] = Field(default_factory=dict)
    feat_map: dict[str, tuple[str, ...]] = Field(default_factory=dict, description="'Key=Value' -> tags")


def load_mapping_profile(name_or_path: str | Path, inventory: Optional[Inventory] = None) -> MappingProfile:
    """Load a mapping profile by path or shipped language code; every target tag must be known."""
    inventory = inventory or default_inventory()
    path = resolve_named(name_or_path, "ud_profiles")
    if not path.exists():
        raise ResourceError(f"mapping profile not found: {name_or_path}")
    language = path.stem
    upos_map: dict[str, str] = {}
    feat_map: dict[str, tuple[str, ...]] = {}
    for line_number, columns in read_rows(path):
        where = f"{path}:{line_number}"
        if len(columns) != 2:
            raise ResourceError(f"{where}: expected 2 columns, got {len(columns)}")
        source, target = columns
        if source == "language":
            language = target
            continue
        tags = () if target.upper() == DROP else tuple(t.strip().upper() for t in target.split(";") if t.strip())
        for tag in tags:
            if inventory.lookup(tag) is None:
                raise ResourceError(f"{where}: {tag} is not in the feature inventory")
        if "=" in source:
            feat_map[source] = tags
        elif len(tags) == 1:
            upos_map[source] = tags[0]
        else:
            raise ResourceError(f"{where}: UPOS {source} must map to exactly one tag")
    logger.debug(f"Loaded UD mapping {language}: {len(upos_map)} UPOS, {len(feat_map)} features")
    return MappingProfile(language=language, upos_map=upos_map, feat_map=feat_map)


def map_ud_to_unimorph(token: UDToken, profile: MappingProfile,
                       inventory: Optional[Inventory] = None) -> FeatureBundle:
    """Build the canonical flat bundle for a token; unmapped feature pairs are dropped."""
    inventory = inventory or default_inventory()
    pos = profile.upos_map.get(token.upos)
    if pos is None:
        raise UnmappedUPOS(f"no UniMorph POS for UPOS {token.upos}")
    texts = [pos]
    for key in sorted(token.feats):
        for value in sorted(token.feats[key]):
            tags = profile.feat_map.get(f"{key}={value}")
            if tags is None:
                logger.trace(f"Unmapped UD feature {key}={value}")
                continue
            texts.extend(tags)
    nodes: dict[str, FeatureNode] = {}
    for text in texts:
        tag = inventory.resolve(text)
        nodes.setdefault(tag.key, FeatureNode(head=tag))
    return canonicalize(FeatureBundle(nodes=tuple(nodes.values())), strict=False)
