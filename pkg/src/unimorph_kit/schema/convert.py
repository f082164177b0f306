"""
Schema Conversion
Rewrites bundles between the flat (UniMorph 3) and hierarchical (UniMorph 4)
feature schemas using a language profile.
"""
from typing import Union

from loguru import logger

from unimorph_kit.errors import UniMorphError
from unimorph_kit.schema.features import (
    FeatureBundle,
    FeatureNode,
    ParseMode,
    SchemaKind,
    canonicalize,
    parse_features,
    serialize,
    serialize_node,
)
from unimorph_kit.schema.inventory import CASE, GENDER, NUMBER, PART_OF_SPEECH, PERSON, POSSESSION
from unimorph_kit.schema.profiles import LanguageProfile

_AGREEMENT = frozenset({PERSON, NUMBER, GENDER})
_PERSON_VALUES = frozenset({"0", "1", "2", "3", "4"})


class ConversionError(UniMorphError):
    code = "ConversionError"


class AmbiguousConversion(ConversionError):
    code = "AmbiguousConversion"


class NoCaseContext(ConversionError):
    code = "NoCaseContext"


class _NotRepresentable:
    """Marker returned when a hierarchical bundle has no flat equivalent."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NOT_REPRESENTABLE"


NOT_REPRESENTABLE = _NotRepresentable()
FlatResult = Union[FeatureBundle, _NotRepresentable]


def _check_agreement(nodes: list[FeatureNode], bundle: FeatureBundle) -> None:
    persons = [n for n in nodes if n.dimension == PERSON and n.head.key in _PERSON_VALUES]
    numbers = [n for n in nodes if n.dimension == NUMBER]
    genders = [n for n in nodes if n.dimension == GENDER]
    if len(persons) > 1 or len(numbers) > 1 or len(genders) > 1:
        raise AmbiguousConversion(
            f"cannot attribute bare agreement in {serialize(bundle)} to a single argument"
        )


def flat_to_hierarchical(bundle: FeatureBundle, profile: LanguageProfile) -> FeatureBundle:
    """
    Rewrite a flat bundle into the hierarchical schema.

    Composite flat tags expand through the profile map. On verbs without an
    explicit case, bare person/number/gender agreement is wrapped under the
    profile's default core case. On nominals the case wraps number, or every
    non-POS feature when the profile says case wraps the nominal.
    Hierarchical input is returned canonicalized.
    """
    if bundle.schema_kind == SchemaKind.HIERARCHICAL:
        return canonicalize(bundle, strict=False)

    plain: list[FeatureNode] = []
    expanded: list[FeatureNode] = []
    for node in bundle.nodes:
        composite = profile.expand(node.head)
        if composite is not None:
            expanded.append(composite)
        else:
            plain.append(node)

    pos_nodes = [n for n in plain if n.dimension == PART_OF_SPEECH]
    cases = [n for n in plain if n.dimension == CASE]
    verbal = profile.is_verbal(bundle.pos)

    if len(cases) > 1:
        raise AmbiguousConversion(f"{serialize(bundle)} carries more than one case")

    if verbal and not cases:
        agreement = [n for n in plain if n.dimension in _AGREEMENT]
        if agreement:
            _check_agreement(agreement, bundle)
            core_key = profile.default_core_case.key
            if any(e.head.key == core_key for e in expanded):
                raise AmbiguousConversion(
                    f"{serialize(bundle)} marks the {core_key} argument twice"
                )
            core = FeatureNode(head=profile.default_core_case, children=tuple(agreement))
            plain = [n for n in plain if n.dimension not in _AGREEMENT] + [core]
    elif cases:
        case = cases[0]
        if profile.case_wraps_nominal:
            wrapped = [n for n in plain if n is not case and n.dimension != PART_OF_SPEECH]
            wrapped += expanded
            expanded = []
            plain = pos_nodes + ([FeatureNode(head=case.head, children=tuple(wrapped))] if wrapped else [case])
        else:
            numbers = [n for n in plain if n.dimension == NUMBER]
            if len(numbers) > 1:
                raise AmbiguousConversion(f"{serialize(bundle)} carries more than one number")
            if numbers:
                wrapped_case = FeatureNode(head=case.head, children=tuple(numbers))
                plain = [n for n in plain if n is not case and n.dimension != NUMBER] + [wrapped_case]
    elif profile.case_wraps_nominal and not verbal:
        if any(n.dimension in (NUMBER, POSSESSION) for n in plain) or expanded:
            raise NoCaseContext(f"{serialize(bundle)} has no case to attach nominal features to")

    return canonicalize(FeatureBundle(nodes=tuple(plain + expanded)), strict=False)


def _contains_case(node: FeatureNode) -> bool:
    return any(child.dimension == CASE or _contains_case(child) for child in node.children)


def _unwrap_nominal_case(node: FeatureNode, profile: LanguageProfile) -> list[str] | None:
    if _contains_case(node):
        return None
    texts = [node.head.text]
    for child in node.children:
        if child.is_atomic:
            texts.append(child.head.text)
            continue
        spelling = profile.collapse(child)
        if spelling is None:
            return None
        texts.append(spelling)
    return texts


def hierarchical_to_flat(bundle: FeatureBundle, profile: LanguageProfile) -> FlatResult:
    """
    Rewrite a hierarchical bundle into the flat schema, or return
    NOT_REPRESENTABLE when no flat bundle carries the same information
    (stacked cases, or composite nodes absent from the profile map).
    Flat input is returned canonicalized.
    """
    canonical = canonicalize(bundle, strict=False)
    if canonical.schema_kind == SchemaKind.FLAT:
        return canonical

    texts = [n.head.text for n in canonical.nodes if n.is_atomic]
    composites = [n for n in canonical.nodes if not n.is_atomic]
    case_nodes = [n for n in composites if n.dimension == CASE]
    has_atomic_case = any(n.is_atomic and n.dimension == CASE for n in canonical.nodes)
    arguments = profile.is_verbal(canonical.pos) and not has_atomic_case

    if arguments:
        core_key = profile.default_core_case.key
        if (
            len(case_nodes) == 1
            and case_nodes[0].head.key == core_key
            and all(c.is_atomic and c.dimension in _AGREEMENT for c in case_nodes[0].children)
        ):
            texts.extend(c.head.text for c in case_nodes[0].children)
            composites.remove(case_nodes[0])
        for node in composites:
            spelling = profile.collapse(node)
            if spelling is None:
                return _not_representable(bundle, serialize_node(node))
            texts.append(spelling)
    else:
        if len(case_nodes) > 1:
            return _not_representable(bundle, "more than one case")
        for node in composites:
            if node.dimension == CASE:
                unwrapped = _unwrap_nominal_case(node, profile)
                if unwrapped is None:
                    return _not_representable(bundle, serialize_node(node))
                texts.extend(unwrapped)
                continue
            spelling = profile.collapse(node)
            if spelling is None:
                return _not_representable(bundle, serialize_node(node))
            texts.append(spelling)

    joined = ";".join(texts)
    try:
        flat = parse_features(joined, mode=ParseMode.LAX)
    except UniMorphError:
        return _not_representable(bundle, f"collapsed form {joined} repeats a tag")
    return canonicalize(flat, strict=False)


def _not_representable(bundle: FeatureBundle, reason: str) -> _NotRepresentable:
    logger.debug(f"{serialize(bundle)} is not flat-representable: {reason}")
    return NOT_REPRESENTABLE
