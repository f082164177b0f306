"""Shared helpers: TSV line handling and ordered parallel execution."""
from unimorph_kit.utils.parallel import run_ordered
from unimorph_kit.utils.tsv import iter_rows, open_text, read_rows, strip_newline

__all__ = ["iter_rows", "open_text", "read_rows", "run_ordered", "strip_newline"]
