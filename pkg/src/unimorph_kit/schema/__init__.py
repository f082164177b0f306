"""Feature inventory, feature bundles and schema conversion."""
from unimorph_kit.schema.convert import (
    NOT_REPRESENTABLE,
    AmbiguousConversion,
    ConversionError,
    NoCaseContext,
    flat_to_hierarchical,
    hierarchical_to_flat,
)
from unimorph_kit.schema.features import (
    CompositeHeadNotAllowed,
    DuplicateTag,
    EmptyComponent,
    FeatureBundle,
    FeatureNode,
    FeatureSyntaxError,
    ParseMode,
    SchemaKind,
    UnbalancedParentheses,
    UnknownTag,
    bundle_key,
    bundles_equal,
    canonicalize,
    parse_features,
    serialize,
)
from unimorph_kit.schema.inventory import Dimension, FeatureTag, Inventory, default_inventory
from unimorph_kit.schema.profiles import LanguageProfile, get_profile, load_profile

__all__ = [
    "NOT_REPRESENTABLE",
    "AmbiguousConversion",
    "CompositeHeadNotAllowed",
    "ConversionError",
    "Dimension",
    "DuplicateTag",
    "EmptyComponent",
    "FeatureBundle",
    "FeatureNode",
    "FeatureSyntaxError",
    "FeatureTag",
    "Inventory",
    "LanguageProfile",
    "NoCaseContext",
    "ParseMode",
    "SchemaKind",
    "UnbalancedParentheses",
    "UnknownTag",
    "bundle_key",
    "bundles_equal",
    "canonicalize",
    "default_inventory",
    "flat_to_hierarchical",
    "get_profile",
    "hierarchical_to_flat",
    "load_profile",
    "parse_features",
    "serialize",
]
