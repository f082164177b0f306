"""
CoNLL-U Token Reader
Streams basic tokens from a Universal Dependencies treebank. Each token line
is parsed by pyconll; comments, multiword ranges and empty nodes are skipped.
"""
from typing import Iterable, Iterator, Optional, Union

from pyconll.exception import ParseError
from pyconll.unit.token import Token
from pydantic import BaseModel, ConfigDict, Field

from unimorph_kit.dataset.records import Diagnostic, Severity
from unimorph_kit.utils.tsv import strip_newline


class UDToken(BaseModel):
    model_config = ConfigDict(frozen=True)

    form: str = Field(min_length=1)
    lemma: str = Field(min_length=1)
    upos: str
    feats: dict[str, frozenset[str]] = Field(default_factory=dict)
    line_number: Optional[int] = Field(default=None, exclude=True)


def read_conllu(lines: Iterable[str], path: Optional[str] = None) -> Iterator[Union[UDToken, Diagnostic]]:
    for line_number, raw in enumerate(lines, start=1):
        line = strip_newline(raw)
        if not line.strip() or line.startswith("#"):
            continue
        try:
            token = Token(line)
        except ParseError as exc:
            yield Diagnostic(line_number=line_number, severity=Severity.ERROR, code="MalformedLine",
                             message=str(exc), path=path)
            continue
        if token.is_multiword() or token.is_empty_node():
            continue
        if not token.form or not token.lemma:
            yield Diagnostic(line_number=line_number, severity=Severity.WARNING, code="MissingFormOrLemma",
                             message=f"token {token.id} has no form or lemma", path=path)
            continue
        yield UDToken(
            form=token.form,
            lemma=token.lemma,
            upos=token.upos or "_",
            feats={key: frozenset(values) for key, values in token.feats.items()},
            line_number=line_number,
        )
