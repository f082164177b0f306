"""Command-line surface of the toolkit."""
from unimorph_kit.interfaces.cli import COMMANDS, ExitStatus, dispatch

__all__ = ["COMMANDS", "ExitStatus", "dispatch"]
