"""Data files shipped with the toolkit (inventory, profiles, morpheme tables)."""
from importlib.resources import files
from pathlib import Path


def resource_path(*parts: str) -> Path:
    """Return the filesystem path of a shipped resource file."""
    return Path(str(files(__name__).joinpath(*parts)))


def resolve_named(name_or_path: str | Path, folder: str) -> Path:
    """
    Resolve a CLI argument that may be either a file path or the name of a
    shipped resource in `folder` (e.g. 'tur' -> profiles/tur.tsv).
    """
    candidate = Path(name_or_path)
    if candidate.exists():
        return candidate
    shipped = resource_path(folder, f"{name_or_path}.tsv")
    if shipped.exists():
        return shipped
    return candidate
