"""
Pytest Configuration
Shared fixtures: the shipped inventory and profiles, the Hungarian morpheme
table, temporary input files and a clean configuration per test.
"""
import sys
from pathlib import Path

import pytest

# Make the src/ layout importable without an install.
sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from unimorph_kit.config import reset_config  # noqa: E402
from unimorph_kit.resources import resource_path  # noqa: E402
from unimorph_kit.schema import default_inventory, get_profile  # noqa: E402
from unimorph_kit.segmentation import Segmenter, load_morpheme_table, load_stem_map  # noqa: E402


@pytest.fixture(autouse=True)
def clean_config():
    """Every test starts from the shipped defaults."""
    reset_config()
    yield
    reset_config()


@pytest.fixture
def inventory():
    return default_inventory()


@pytest.fixture
def profiles():
    """Shipped language profiles by code."""
    return {code: get_profile(code) for code in ("base", "eng", "kat", "heb", "rus", "tur", "evn", "hun")}


@pytest.fixture
def hungarian_table():
    return load_morpheme_table(resource_path("segmentation", "hun.table.tsv"))


@pytest.fixture
def hungarian_stems():
    return load_stem_map(resource_path("segmentation", "hun.stems.tsv"))


@pytest.fixture
def hungarian_segmenter(hungarian_table, hungarian_stems):
    return Segmenter(hungarian_table, stem_map=hungarian_stems)


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file under tmp_path and return its path as a string."""

    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8", newline="")
        return str(path)

    return _write
