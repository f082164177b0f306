"""
UniMorph Kit - Main Entry Point
Builds the argument parser, configures logging and dispatches subcommands.
"""
import argparse
import sys
from typing import Optional, Sequence

from loguru import logger

from unimorph_kit import __version__
from unimorph_kit.config import ConfigError, get_config, load_config
from unimorph_kit.errors import UniMorphError
from unimorph_kit.interfaces.cli import ExitStatus, dispatch
from unimorph_kit.schema import default_inventory

VERBOSITY_LEVELS = ("WARNING", "INFO", "DEBUG")


def configure_logging(level: str) -> None:
    """Log to stderr only; stdout is reserved for command output."""
    logger.remove()
    logger.add(sys.stderr, level=level, format="{level}: {message}", colorize=False)


def _version_string() -> str:
    return f"unimorph-kit {__version__} (inventory {default_inventory().version})"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unimorph-kit",
        description="Validate, convert, segment and evaluate UniMorph 4.0 data.",
    )
    parser.add_argument("--version", action="version", version=_version_string())
    parser.add_argument("--config", help="YAML file overriding the shipped configuration")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes for multi-file commands")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Repeat for more log output")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true", help="Treat warnings as errors")

    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", parents=[common], help="Check inflection files and print statistics")
    validate.add_argument("paths", nargs="+")
    validate.add_argument("--schema", choices=("flat", "hier", "auto"), default=None)
    validate.add_argument("--stem-map", help="Surface-to-display stem TSV")
    validate.add_argument("--by-pos", action="store_true", help="Print per-POS counts")

    convert = sub.add_parser("convert", parents=[common], help="Convert between flat and hierarchical schemas")
    convert.add_argument("path")
    convert.add_argument("--to", choices=("hier", "flat"), required=True)
    convert.add_argument("--profile", required=True, help="Language profile name or path")
    convert.add_argument("--rejects", help="Write rows with no flat equivalent here")

    segment = sub.add_parser("segment", parents=[common], help="Segment forms with a morpheme table")
    segment.add_argument("path")
    segment.add_argument("--table", required=True)
    segment.add_argument("--overrides")
    segment.add_argument("--stem-map")
    segment.add_argument("--all-parses", action="store_true")

    infer = sub.add_parser("infer-paradigms", parents=[common], help="Assign inflection classes to lemmas")
    infer.add_argument("path")
    infer.add_argument("--inventory", required=True, help="Paradigm inventory TSV")
    infer.add_argument("--lenient", action="store_true", help="Ignore cells the class does not define")

    fuse = sub.add_parser("fuse-derivations", parents=[common], help="Merge preliminary derivation files")
    fuse.add_argument("paths", nargs="+")
    fuse.add_argument("--output")
    fuse.add_argument("--language", help="Language code for every input (default: file stem)")
    fuse.add_argument("--stats", action="store_true")
    fuse.add_argument("--infer-affixes", action="store_true",
                      help="Fill missing affixes and check recorded ones against the lemma pair")

    eval_ud = sub.add_parser("eval-ud", parents=[common], help="Score a UniMorph file against a CoNLL-U treebank")
    eval_ud.add_argument("unimorph")
    eval_ud.add_argument("conllu")
    eval_ud.add_argument("--profile", required=True, help="UD mapping profile name or path")
    eval_ud.add_argument("--schema-profile", default="base",
                         help="Language profile used to flatten hierarchical rows")
    eval_ud.add_argument("--partial", action="store_true")
    eval_ud.add_argument("--format", choices=("text", "tsv"), default="text")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    verbosity = min(args.verbose, len(VERBOSITY_LEVELS) - 1)
    configure_logging(VERBOSITY_LEVELS[verbosity])
    try:
        config = load_config(args.config) if args.config else get_config()
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return ExitStatus.USAGE
    if not verbosity:
        configure_logging(config.logging.level)

    try:
        return int(dispatch(args))
    except UniMorphError as exc:
        sys.stderr.write(f"error: {exc}\n")
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
    except UnicodeDecodeError as exc:
        sys.stderr.write(f"error: input is not valid UTF-8: {exc}\n")
    return ExitStatus.USAGE


if __name__ == "__main__":
    sys.exit(main())
