"""
Plain-text TSV helpers shared by the resource loaders.
Resource files use '#' comments, blank lines and tab-separated columns.
"""
from pathlib import Path
from typing import Iterable, Iterator, TextIO


def strip_newline(line: str) -> str:
    """Remove a trailing LF or CRLF."""
    return line.rstrip("\r\n")


def iter_rows(lines: Iterable[str]) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_number, columns) for every data line, skipping comments and blanks."""
    for line_number, raw in enumerate(lines, start=1):
        line = strip_newline(raw)
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield line_number, [column.strip() for column in line.split("\t")]


def open_text(path: str | Path) -> TextIO:
    """Open a UTF-8 text file, keeping CRLF visible so readers can normalise it."""
    return open(path, "r", encoding="utf-8", newline="")


def read_rows(path: str | Path) -> list[tuple[int, list[str]]]:
    """Read all data rows of a resource file."""
    with open_text(path) as handle:
        return list(iter_rows(handle))
