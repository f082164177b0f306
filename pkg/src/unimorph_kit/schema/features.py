"""
Feature Bundles
Parsing, serialization and canonical ordering of flat and hierarchical
UniMorph feature strings.

Grammar:
    bundle   := node (';' node)*
    node     := TAG | TAG '(' children ')'
    children := node ((';' | ',') node)*
"""
import re
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict

from unimorph_kit.errors import UniMorphError
from unimorph_kit.schema.inventory import (
    COMPOSITE_HEAD_DIMENSIONS,
    PART_OF_SPEECH,
    TAG_TEXT,
    FeatureTag,
    Inventory,
    default_inventory,
)


class FeatureSyntaxError(UniMorphError):
    """A feature string does not follow the bundle grammar."""

    code = "FeatureSyntaxError"


class UnbalancedParentheses(FeatureSyntaxError):
    code = "UnbalancedParentheses"


class EmptyComponent(FeatureSyntaxError):
    code = "EmptyComponent"


class UnknownTag(FeatureSyntaxError):
    code = "UnknownTag"


class CompositeHeadNotAllowed(FeatureSyntaxError):
    code = "CompositeHeadNotAllowed"


class DuplicateTag(FeatureSyntaxError):
    code = "DuplicateTag"


class ParseMode(str, Enum):
    STRICT = "strict"
    LAX = "lax"


class SchemaKind(str, Enum):
    FLAT = "flat"
    HIERARCHICAL = "hierarchical"


class FeatureNode(BaseModel):
    """A tag, optionally heading a parenthesized group of child nodes."""

    model_config = ConfigDict(frozen=True)

    head: FeatureTag
    children: tuple["FeatureNode", ...] = ()

    @property
    def is_atomic(self) -> bool:
        return not self.children

    @property
    def dimension(self) -> str:
        return self.head.dimension.id

    def __str__(self) -> str:
        return serialize_node(self)


FeatureNode.model_rebuild()


class FeatureBundle(BaseModel):
    """An ordered sequence of top-level feature nodes describing one word form."""

    model_config = ConfigDict(frozen=True)

    nodes: tuple[FeatureNode, ...]

    @property
    def schema_kind(self) -> SchemaKind:
        if any(not node.is_atomic for node in self.nodes):
            return SchemaKind.HIERARCHICAL
        return SchemaKind.FLAT

    @property
    def pos(self) -> Optional[FeatureTag]:
        """The first part-of-speech tag, if any."""
        for node in self.nodes:
            if node.dimension == PART_OF_SPEECH:
                return node.head
        return None

    def atomic_keys(self) -> frozenset[str]:
        """Identity keys of the atomic top-level tags."""
        return frozenset(node.head.key for node in self.nodes if node.is_atomic)

    def tags(self) -> list[FeatureTag]:
        """Every tag in the bundle, depth first."""
        found: list[FeatureTag] = []
        stack = list(reversed(self.nodes))
        while stack:
            node = stack.pop()
            found.append(node.head)
            stack.extend(reversed(node.children))
        return found

    def __str__(self) -> str:
        return serialize(self)

    @classmethod
    def parse(cls, text: str, mode: ParseMode = ParseMode.STRICT,
              inventory: Optional[Inventory] = None) -> "FeatureBundle":
        return parse_features(text, mode=mode, inventory=inventory)


_SEPARATORS = re.compile(r"([;,()])")


class _Parser:
    def __init__(self, text: str, mode: ParseMode, inventory: Inventory):
        self.text = text
        self.strict = mode == ParseMode.STRICT
        self.inventory = inventory
        # Empty pieces are dropped: an empty component then shows up as a
        # separator (or end of input) where a tag is expected.
        self.tokens = [p for p in (piece.strip() for piece in _SEPARATORS.split(text)) if p]
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Optional[str]:
        token = self.peek()
        self.pos += 1
        return token

    def bundle(self) -> FeatureBundle:
        nodes = [self.node()]
        while True:
            token = self.take()
            if token is None:
                break
            if token == ";":
                nodes.append(self.node())
            elif token == ",":
                raise FeatureSyntaxError(f"',' separates children only, in {self.text!r}")
            else:
                raise FeatureSyntaxError(f"unexpected {token!r} in {self.text!r}")
        self._check_duplicates(nodes)
        return FeatureBundle(nodes=tuple(nodes))

    def node(self) -> FeatureNode:
        token = self.take()
        if token is None or token in ";,()":
            raise EmptyComponent(f"empty component in {self.text!r}")
        head = self.tag(token)
        if self.peek() != "(":
            return FeatureNode(head=head)
        self.take()
        if self.strict and head.dimension.id not in COMPOSITE_HEAD_DIMENSIONS:
            raise CompositeHeadNotAllowed(f"{head.text} cannot head a composite feature")
        children = [self.node()]
        while self.peek() in (";", ","):
            self.take()
            children.append(self.node())
        if self.take() != ")":
            raise UnbalancedParentheses(f"missing ')' in {self.text!r}")
        self._check_duplicates(children)
        return FeatureNode(head=head, children=tuple(children))

    def tag(self, token: str) -> FeatureTag:
        text = token.upper()
        if not TAG_TEXT.match(text):
            raise FeatureSyntaxError(f"invalid tag text {token!r}")
        if self.strict:
            tag = self.inventory.lookup(text)
            if tag is None:
                raise UnknownTag(f"{text} is not in the feature inventory")
            return tag
        return self.inventory.resolve(text)

    @staticmethod
    def _check_duplicates(nodes: list[FeatureNode]) -> None:
        seen: set[str] = set()
        for node in nodes:
            identity = serialize_node(_canonical_node(node), keys=True)
            if identity in seen:
                raise DuplicateTag(f"{serialize_node(node)} appears twice among siblings")
            seen.add(identity)


def _check_balance(text: str) -> None:
    depth = 0
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                raise UnbalancedParentheses(f"unexpected ')' in {text!r}")
    if depth:
        raise UnbalancedParentheses(f"unclosed '(' in {text!r}")


def parse_features(text: str, mode: ParseMode = ParseMode.STRICT,
                   inventory: Optional[Inventory] = None) -> FeatureBundle:
    """
    Parse a flat or hierarchical feature string.

    Tags are case-normalized to upper case and whitespace around separators is
    ignored. In strict mode every tag must be in the inventory and only Case or
    Possession tags may head a composite; lax mode admits both.
    """
    if not text or not text.strip():
        raise EmptyComponent("empty feature string")
    _check_balance(text)
    return _Parser(text, mode, inventory or default_inventory()).bundle()


def serialize_node(node: FeatureNode, keys: bool = False) -> str:
    head = node.head.key if keys else node.head.text
    if node.is_atomic:
        return head
    separator = "," if all(child.is_atomic for child in node.children) else ";"
    return f"{head}({separator.join(serialize_node(c, keys) for c in node.children)})"


def serialize(bundle: FeatureBundle) -> str:
    """Render a bundle; a node's children join with ',' when all are atomic, else ';'."""
    return ";".join(serialize_node(node) for node in bundle.nodes)


def _sort_key(node: FeatureNode) -> tuple:
    head = node.head
    return (head.dimension.canonical_rank, head.rank, head.key, serialize_node(node, keys=True))


def _canonical_node(node: FeatureNode) -> FeatureNode:
    if node.is_atomic:
        return node
    children = sorted((_canonical_node(c) for c in node.children), key=_sort_key)
    return FeatureNode(head=node.head, children=tuple(children))


def canonicalize(bundle: FeatureBundle, strict: bool = True) -> FeatureBundle:
    """
    Order sibling nodes by dimension, then by tag position within the
    dimension. Parent-child relations are never changed.
    """
    if strict:
        for tag in bundle.tags():
            if not tag.known:
                raise UnknownTag(f"{tag.text} has no canonical position")
    nodes = sorted((_canonical_node(n) for n in bundle.nodes), key=_sort_key)
    return FeatureBundle(nodes=tuple(nodes))


def bundle_key(bundle: FeatureBundle) -> str:
    """A hashable identity for a bundle: its canonical form spelled with tag keys."""
    canonical = canonicalize(bundle, strict=False)
    return ";".join(serialize_node(node, keys=True) for node in canonical.nodes)


def bundles_equal(a: FeatureBundle, b: FeatureBundle) -> bool:
    """Structural equality up to sibling order and ARG-prefix spelling."""
    return bundle_key(a) == bundle_key(b)
