"""
Recursive Segmenter
Walks from a form's cell back to a root cell of the morpheme table, stripping
one allomorph per edge; whatever remains at the root is the stem.
"""
from typing import Iterable, Iterator, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict

from unimorph_kit.dataset.records import Diagnostic, InflectionRecord, Severity
from unimorph_kit.errors import UniMorphError
from unimorph_kit.schema.features import (
    FeatureBundle,
    FeatureNode,
    bundle_key,
    canonicalize,
    serialize,
    serialize_node,
)
from unimorph_kit.schema.inventory import PART_OF_SPEECH
from unimorph_kit.segmentation.table import (
    AffixKind,
    MorphemeEdge,
    MorphemeTable,
    OverrideRule,
    StemMap,
)

DEFAULT_MAX_PATH_LENGTH = 16


class SegmentationError(UniMorphError):
    code = "SegmentationError"


class NoPath(SegmentationError):
    code = "NoPath"


class NoMatchingAllomorph(SegmentationError):
    code = "NoMatchingAllomorph"


class EmptyStem(SegmentationError):
    code = "EmptyStem"


class CycleDetected(SegmentationError):
    code = "CycleDetected"


class Segmentation(BaseModel):
    """
    Morphs in surface order and the edges that produced them, root outward.
    `stem_index` locates the stem among the morphs; `display_stem` is the
    stem after the stem-alternation map, when one applies.
    """

    model_config = ConfigDict(frozen=True)

    morphs: tuple[str, ...]
    path: tuple[MorphemeEdge, ...] = ()
    stem_index: int = 0
    display_stem: Optional[str] = None
    override: Optional[OverrideRule] = None

    @property
    def stem(self) -> str:
        return self.morphs[self.stem_index]

    @property
    def display_morphs(self) -> tuple[str, ...]:
        if self.display_stem is None:
            return self.morphs
        morphs = list(self.morphs)
        morphs[self.stem_index] = self.display_stem
        return tuple(morphs)

    def surface(self) -> str:
        return "".join(self.morphs)

    def morph_edges(self) -> list[Optional[int]]:
        """Index into `path` of the edge behind each morph, surface order; None for the stem."""
        prefixes = [i for i in reversed(range(len(self.path))) if self.path[i].kind == AffixKind.PREFIX]
        suffixes = [i for i in range(len(self.path)) if self.path[i].kind == AffixKind.SUFFIX]
        return [*prefixes, None, *suffixes]


# (edge, allomorph) pairs in stripping order, outermost first.
_Steps = tuple[tuple[MorphemeEdge, str], ...]


class Segmenter:
    """Segments forms against one morpheme table and its overrides."""

    def __init__(
        self,
        table: MorphemeTable,
        overrides: Sequence[OverrideRule] = (),
        stem_map: Optional[StemMap] = None,
        max_path_length: int = DEFAULT_MAX_PATH_LENGTH,
    ):
        self.table = table
        self.stem_map = stem_map or StemMap()
        self.max_path_length = max_path_length
        self._overrides = {(rule.form, bundle_key(rule.features)): rule for rule in overrides}

    def segment(self, form: str, features: FeatureBundle) -> Segmentation:
        """The single best parse: longest allomorphs first, then fewest edges."""
        return self.segment_all(form, features)[0]

    def segment_all(self, form: str, features: FeatureBundle) -> list[Segmentation]:
        """Every valid parse, best first. Raises when there is none."""
        rule = self._overrides.get((form, bundle_key(features)))
        if rule is not None:
            return [Segmentation(morphs=rule.segmentation, override=rule)]

        if not self.table.knows(features) or not self.table.reaches_root(features):
            raise NoPath(f"{serialize(features)} is not reachable from a root cell")

        failures: set[str] = set()
        parses: list[tuple[str, _Steps]] = []
        self._search(features, form, (), parses, failures)
        if not parses:
            if CycleDetected.code in failures:
                raise CycleDetected(
                    f"no parse of {form} within {self.max_path_length} edges; the table may be cyclic"
                )
            if EmptyStem.code in failures:
                raise EmptyStem(f"stripping affixes from {form} leaves no stem")
            raise NoMatchingAllomorph(f"no allomorph path spells {form} as {serialize(features)}")

        parses.sort(key=lambda parse: _rank(parse[1]))
        return [self._build(stem, steps) for stem, steps in parses]

    def _search(self, bundle: FeatureBundle, residue: str, steps: _Steps,
                parses: list[tuple[str, _Steps]], failures: set[str]) -> None:
        if self.table.is_root(bundle):
            parses.append((residue, steps))
        if len(steps) >= self.max_path_length:
            if not self.table.is_root(bundle):
                failures.add(CycleDetected.code)
            return
        for edge in self.table.edges_into(bundle):
            for allomorph in edge.allomorphs:
                if edge.kind == AffixKind.SUFFIX:
                    fits = residue.endswith(allomorph)
                    rest = residue[: len(residue) - len(allomorph)]
                else:
                    fits = residue.startswith(allomorph)
                    rest = residue[len(allomorph):]
                if not fits:
                    continue
                if not rest:
                    failures.add(EmptyStem.code)
                    continue
                self._search(edge.source, rest, steps + ((edge, allomorph),), parses, failures)

    def _build(self, stem: str, steps: _Steps) -> Segmentation:
        prefixes = [a for e, a in steps if e.kind == AffixKind.PREFIX]
        suffixes = [a for e, a in reversed(steps) if e.kind == AffixKind.SUFFIX]
        display = self.stem_map.display(stem)
        return Segmentation(
            morphs=(*prefixes, stem, *suffixes),
            path=tuple(e for e, _ in reversed(steps)),
            stem_index=len(prefixes),
            display_stem=display if display != stem else None,
        )


def _rank(steps: _Steps) -> tuple:
    return (
        tuple(-len(a) for _, a in steps),
        len(steps),
        tuple(a for _, a in steps),
        tuple(bundle_key(e.source) for e, _ in steps),
    )


def segment(form: str, features: FeatureBundle, table: MorphemeTable,
            overrides: Sequence[OverrideRule] = ()) -> Segmentation:
    return Segmenter(table, overrides).segment(form, features)


def segment_all(form: str, features: FeatureBundle, table: MorphemeTable,
                overrides: Sequence[OverrideRule] = ()) -> list[Segmentation]:
    return Segmenter(table, overrides).segment_all(form, features)


def _node_key(node: FeatureNode) -> str:
    return serialize_node(canonicalize(FeatureBundle(nodes=(node,)), strict=False).nodes[0], keys=True)


def _introduced(edge: MorphemeEdge) -> set[str]:
    before = {_node_key(n) for n in edge.source.nodes}
    return {_node_key(n) for n in edge.target.nodes} - before


def non_monotonic_edges(seg: Segmentation) -> list[MorphemeEdge]:
    """Edges on the path whose target cell adds no feature to their source cell."""
    return [edge for edge in seg.path if not _introduced(edge)]


def feature_slots(seg: Segmentation, features: FeatureBundle) -> list[list[FeatureNode]]:
    """
    Distribute the form's top-level features over its morphs (surface order).

    The stem carries the part of speech. Each affix carries the features its
    edge introduced that survive into the form; features inherited unchanged
    from the root cell ride on the innermost affix.
    """
    final = canonicalize(features, strict=False).nodes
    morph_edges = seg.morph_edges()
    slots: list[list[FeatureNode]] = [[] for _ in morph_edges]
    stem_slot = morph_edges.index(None)
    if not seg.path:
        slots[stem_slot] = list(final)
        return slots

    slot_of_edge = {index: slot for slot, index in enumerate(morph_edges) if index is not None}
    introduced = [_introduced(edge) for edge in seg.path]

    innermost = slot_of_edge[0]
    for node in final:
        if node.dimension == PART_OF_SPEECH:
            slots[stem_slot].append(node)
            continue
        key = _node_key(node)
        owners = [i for i, delta in enumerate(introduced) if key in delta]
        target = slot_of_edge[owners[-1]] if owners else innermost
        slots[target].append(node)
    return slots


def align_feature_segmentation(seg: Segmentation, features: FeatureBundle) -> str:
    """Render the '|'-separated features column aligned with the morphs."""
    if seg.override is not None:
        return seg.override.feature_segmentation or serialize(features)
    if not seg.path:
        return serialize(canonicalize(features, strict=False))
    return "|".join(
        serialize(FeatureBundle(nodes=tuple(slot))) if slot else ""
        for slot in feature_slots(seg, features)
    )


def segment_dataset(
    items: Iterable[Union[InflectionRecord, Diagnostic]],
    segmenter: Segmenter,
    all_parses: bool = False,
    path: Optional[str] = None,
) -> Iterator[Union[InflectionRecord, Diagnostic]]:
    """
    Segment every record. Root cells stay unsegmented rows; failures become
    error diagnostics; incoming diagnostics pass through unchanged. An edge
    that adds no feature gets a NonMonotonicEdge warning ahead of the row,
    once per record.
    """
    for index, item in enumerate(items, start=1):
        if isinstance(item, Diagnostic):
            yield item
            continue
        try:
            parses = segmenter.segment_all(item.form, item.features)
        except SegmentationError as exc:
            yield Diagnostic(
                line_number=item.line_number or index,
                severity=Severity.ERROR,
                code=exc.code,
                message=f"{item.form}: {exc.args[0]}",
                path=path,
            )
            continue
        reported: set[tuple[str, str]] = set()
        for parse in parses if all_parses else parses[:1]:
            if parse.override is None and not parse.path:
                yield item.model_copy(update={"segmentation": None, "feature_segmentation": None})
                continue
            for edge in non_monotonic_edges(parse):
                cells = (serialize(edge.source), serialize(edge.target))
                if cells in reported:
                    continue
                reported.add(cells)
                yield Diagnostic(
                    line_number=item.line_number or index,
                    severity=Severity.WARNING,
                    code="NonMonotonicEdge",
                    message=f"{item.form}: edge {cells[0]} -> {cells[1]} adds no feature",
                    path=path,
                )
            yield item.model_copy(update={
                "segmentation": parse.display_morphs,
                "feature_segmentation": align_feature_segmentation(parse, item.features),
            })
