"""
Form Patterns
Cell patterns such as `{1}ам`: literal text with numbered variable slots that
bind to non-empty stem substrings shared across a paradigm's cells.
"""
import re
from typing import Mapping, Union

from pydantic import BaseModel, ConfigDict, model_validator

Binding = dict[int, str]
Segment = Union[int, str]

_VARIABLE = re.compile(r"\{(\d+)\}")


class FormPattern(BaseModel):
    """Literal strings and variable ids in order."""

    model_config = ConfigDict(frozen=True)

    segments: tuple[Segment, ...]

    @model_validator(mode="after")
    def _well_formed(self) -> "FormPattern":
        if not any(isinstance(s, int) for s in self.segments):
            raise ValueError("pattern has no variable part")
        for left, right in zip(self.segments, self.segments[1:]):
            if isinstance(left, int) and isinstance(right, int):
                raise ValueError(f"variables {{{left}}} and {{{right}}} are adjacent")
        if any(isinstance(s, str) and not s for s in self.segments):
            raise ValueError("empty literal segment")
        return self

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(s for s in self.segments if isinstance(s, int))

    @classmethod
    def parse(cls, text: str) -> "FormPattern":
        """Parse `{1}` placeholders and literal text, e.g. '{1}ам' -> (1, 'ам')."""
        segments: list[Segment] = []
        position = 0
        for match in _VARIABLE.finditer(text):
            if match.start() > position:
                segments.append(text[position:match.start()])
            segments.append(int(match.group(1)))
            position = match.end()
        if position < len(text):
            segments.append(text[position:])
        return cls(segments=tuple(segments))

    def render(self, binding: Mapping[int, str]) -> str:
        """Substitute a complete binding into the pattern."""
        return "".join(s if isinstance(s, str) else binding[s] for s in self.segments)

    def __str__(self) -> str:
        return "".join(s if isinstance(s, str) else f"{{{s}}}" for s in self.segments)


def match_cell(form: str, pattern: FormPattern, partial_binding: Mapping[int, str] | None = None) -> list[Binding]:
    """Every extension of `partial_binding` under which `pattern` spells `form`."""
    segments = pattern.segments
    binding: Binding = dict(partial_binding or {})
    results: list[Binding] = []

    def walk(index: int, offset: int) -> None:
        if index == len(segments):
            if offset == len(form):
                results.append(dict(binding))
            return
        segment = segments[index]
        if isinstance(segment, str):
            if form.startswith(segment, offset):
                walk(index + 1, offset + len(segment))
            return
        bound = binding.get(segment)
        if bound is not None:
            if form.startswith(bound, offset):
                walk(index + 1, offset + len(bound))
            return
        for end in range(offset + 1, len(form) + 1):
            binding[segment] = form[offset:end]
            walk(index + 1, end)
        binding.pop(segment, None)

    walk(0, 0)
    return results
