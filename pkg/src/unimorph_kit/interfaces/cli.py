"""
UniMorph Kit - Command Handlers
One handler per subcommand. Data goes to stdout, diagnostics to stderr, and
each handler returns an ExitStatus.
"""
import argparse
import sys
from enum import IntEnum
from pathlib import Path
from typing import Iterable, Optional, TextIO

from loguru import logger
from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from unimorph_kit.config import get_config
from unimorph_kit.dataset import (
    DatasetStats,
    Diagnostic,
    InflectionItem,
    InflectionRecord,
    SchemaMode,
    Severity,
    format_inflection,
    read_inflections,
    validate_dataset,
    write_inflections,
)
from unimorph_kit.derivations import (
    Confidence,
    DerivationError,
    DerivationRecord,
    derivation_stats,
    fuse,
    infer_affix,
    read_derivations,
    validate_affix,
    write_derivations,
)
from unimorph_kit.evaluation import (
    build_index,
    evaluate,
    load_mapping_profile,
    read_conllu,
    render_report_table,
    render_report_tsv,
)
from unimorph_kit.paradigms import infer_classes, load_paradigm_inventory
from unimorph_kit.schema import (
    ConversionError,
    FeatureBundle,
    ParseMode,
    flat_to_hierarchical,
    hierarchical_to_flat,
    load_profile,
)
from unimorph_kit.segmentation import (
    Segmenter,
    load_morpheme_table,
    load_overrides,
    load_stem_map,
    segment_dataset,
)
from unimorph_kit.utils.parallel import run_ordered
from unimorph_kit.utils.tsv import open_text

CONSOLE_WIDTH = 100


class ExitStatus(IntEnum):
    OK = 0
    VALIDATION_ERRORS = 1
    USAGE = 2


def make_console(stream: TextIO) -> Console:
    """A fixed-width, colourless console so tables render identically everywhere."""
    return Console(file=stream, width=CONSOLE_WIDTH, color_system=None, force_terminal=False,
                   highlight=False, emoji=False)


def write_diagnostics(diagnostics: Iterable[Diagnostic], stream: TextIO) -> None:
    for diagnostic in diagnostics:
        stream.write(diagnostic.format() + "\n")


def exit_status(diagnostics: Iterable[Diagnostic], strict: bool = False) -> ExitStatus:
    severities = {d.severity for d in diagnostics}
    if Severity.ERROR in severities or (strict and Severity.WARNING in severities):
        return ExitStatus.VALIDATION_ERRORS
    return ExitStatus.OK


def schema_mode(value: Optional[str]) -> SchemaMode:
    if value is None:
        return SchemaMode(get_config().dataset.schema_mode)
    return SchemaMode.HIERARCHICAL if value.startswith("hier") else SchemaMode(value)


def read_inflection_file(path: str, mode: SchemaMode = SchemaMode.AUTO) -> list[InflectionItem]:
    settings = get_config().dataset
    with open_text(path) as handle:
        return list(read_inflections(
            handle,
            schema_mode=mode,
            parse_mode=ParseMode(settings.parse_mode),
            path=path,
            require_nfc=settings.require_nfc,
        ))


def split_items(items: Iterable[InflectionItem]) -> tuple[list[InflectionRecord], list[Diagnostic]]:
    records: list[InflectionRecord] = []
    diagnostics: list[Diagnostic] = []
    for item in items:
        (diagnostics if isinstance(item, Diagnostic) else records).append(item)
    return records, diagnostics


# --- validate ---


class ValidateTask(BaseModel):
    path: str
    schema_mode: SchemaMode
    parse_mode: ParseMode
    require_nfc: bool
    stem_map: dict[str, str] = Field(default_factory=dict)


class ValidateOutcome(BaseModel):
    path: str
    diagnostics: list[Diagnostic] = Field(default_factory=list)
    stats: DatasetStats = Field(default_factory=DatasetStats)
    io_error: Optional[str] = None


def validate_file(task: ValidateTask) -> ValidateOutcome:
    """Validate one file; runs in a worker process when --jobs > 1."""
    try:
        with open_text(task.path) as handle:
            items = read_inflections(handle, schema_mode=task.schema_mode, parse_mode=task.parse_mode,
                                     path=task.path, require_nfc=task.require_nfc)
            result = validate_dataset(items, stem_map=task.stem_map, path=task.path)
    except (OSError, UnicodeDecodeError) as exc:
        return ValidateOutcome(path=task.path, io_error=str(exc))
    return ValidateOutcome(path=task.path, diagnostics=result.diagnostics, stats=result.stats)


def render_pos_table(stats: DatasetStats, title: str, console: Console) -> None:
    table = Table(title=title)
    table.add_column("POS", style="bold")
    table.add_column("Lemmas", justify="right")
    table.add_column("Forms", justify="right")
    for pos, counts in stats.per_pos_counts.items():
        table.add_row(pos, str(counts.lemmas), str(counts.forms))
    table.add_row("ALL", str(stats.lemma_count), str(stats.form_count))
    console.print(table)


def cmd_validate(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> ExitStatus:
    settings = get_config()
    stem_map = load_stem_map(args.stem_map).mapping if args.stem_map else {}
    tasks = [
        ValidateTask(
            path=path,
            schema_mode=schema_mode(args.schema),
            parse_mode=ParseMode(settings.dataset.parse_mode),
            require_nfc=settings.dataset.require_nfc,
            stem_map=stem_map,
        )
        for path in args.paths
    ]
    outcomes = run_ordered(validate_file, tasks, jobs=args.jobs or settings.system.jobs)

    status = ExitStatus.OK
    console = make_console(stdout)
    for outcome in outcomes:
        if outcome.io_error is not None:
            stderr.write(f"{outcome.path}: error: {outcome.io_error}\n")
            status = ExitStatus.USAGE
            continue
        write_diagnostics(outcome.diagnostics, stderr)
        stdout.write(f"{outcome.path}\t{outcome.stats.summary()}\n")
        if args.by_pos:
            render_pos_table(outcome.stats, outcome.path, console)
        if status != ExitStatus.USAGE:
            status = max(status, exit_status(outcome.diagnostics, strict=args.strict))
    return status


# --- convert ---


def cmd_convert(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> ExitStatus:
    profile = load_profile(args.profile)
    records, diagnostics = split_items(read_inflection_file(args.path))
    rejects: list[str] = []
    converted: list[InflectionRecord] = []

    for record in records:
        line = record.line_number or 1
        try:
            if args.to == "hier":
                result = flat_to_hierarchical(record.features, profile)
            else:
                result = hierarchical_to_flat(record.features, profile)
        except ConversionError as exc:
            diagnostics.append(Diagnostic(line_number=line, severity=Severity.ERROR, code=exc.code,
                                          message=exc.args[0], path=args.path))
            continue
        if not isinstance(result, FeatureBundle):
            rejects.append(format_inflection(record))
            if not args.rejects:
                diagnostics.append(Diagnostic(
                    line_number=line, severity=Severity.WARNING, code="NotRepresentable",
                    message=f"{record.form} has no flat equivalent", path=args.path,
                ))
            continue
        converted.append(record.model_copy(update={"features": result, "feature_segmentation": None}))

    diagnostics.sort(key=lambda d: d.line_number)
    write_diagnostics(diagnostics, stderr)
    write_inflections(converted, stdout)
    if args.rejects:
        with open(args.rejects, "w", encoding="utf-8", newline="\n") as handle:
            for row in rejects:
                handle.write(row + "\n")
        logger.info(f"Wrote {len(rejects)} rejected rows to {args.rejects}")
    return exit_status(diagnostics, strict=args.strict)


# --- segment ---


def cmd_segment(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> ExitStatus:
    settings = get_config().segmentation
    segmenter = Segmenter(
        load_morpheme_table(args.table),
        overrides=load_overrides(args.overrides) if args.overrides else (),
        stem_map=load_stem_map(args.stem_map) if args.stem_map else None,
        max_path_length=settings.max_path_length,
    )
    all_parses = args.all_parses or settings.all_parses
    diagnostics: list[Diagnostic] = []
    items = read_inflection_file(args.path)
    for item in segment_dataset(items, segmenter, all_parses=all_parses, path=args.path):
        if isinstance(item, Diagnostic):
            stderr.write(item.format() + "\n")
            diagnostics.append(item)
        else:
            stdout.write(format_inflection(item) + "\n")
    return exit_status(diagnostics, strict=args.strict)


# --- infer-paradigms ---


def cmd_infer_paradigms(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> ExitStatus:
    inventory = load_paradigm_inventory(args.inventory)
    records, diagnostics = split_items(read_inflection_file(args.path))
    write_diagnostics(diagnostics, stderr)

    by_lemma: dict[str, list[tuple[str, FeatureBundle]]] = {}
    for record in records:
        by_lemma.setdefault(record.lemma, []).append((record.form, record.features))
    for lemma, triples in by_lemma.items():
        classes = sorted(infer_classes(triples, inventory, lenient=args.lenient))
        stdout.write(f"{lemma}\t{','.join(classes) if classes else '-'}\n")
    return exit_status(diagnostics, strict=args.strict)


# --- fuse-derivations ---


class DerivationTask(BaseModel):
    path: str
    language: str


def read_derivation_file(task: DerivationTask) -> list:
    with open_text(task.path) as handle:
        return list(read_derivations(handle, language=task.language, path=task.path))


def render_derivation_stats(records: list[DerivationRecord], console: Console) -> None:
    table = Table(title="Derivations")
    table.add_column("Language", style="bold")
    table.add_column("Lemmas", justify="right")
    table.add_column("Derivations", justify="right")
    table.add_column("Morphemes", justify="right")
    for language, stats in derivation_stats(records).items():
        table.add_row(language, str(stats.lemma_count), str(stats.derivation_count), str(stats.morpheme_count))
    console.print(table)


def check_affixes(records: list[DerivationRecord]) -> tuple[list[DerivationRecord], list[Diagnostic]]:
    """
    Fill missing affixes that can be inferred with exact or truncating
    confidence, and flag recorded affixes the lemma pair does not support.
    Diagnostics point at the 1-based row of the fused output.
    """
    settings = get_config().derivations
    checked: list[DerivationRecord] = []
    diagnostics: list[Diagnostic] = []
    for row, record in enumerate(records, start=1):
        if record.affix is None:
            try:
                inference = infer_affix(record.source, record.target,
                                        min_prefix=settings.truncation_min_prefix,
                                        slack=settings.truncation_slack)
            except DerivationError:
                checked.append(record)
                continue
            if inference.confidence != Confidence.WEAK:
                record = record.model_copy(update={"affix": inference.display})
        elif not validate_affix(record, min_prefix=settings.truncation_min_prefix,
                                slack=settings.truncation_slack):
            diagnostics.append(Diagnostic(
                line_number=row, severity=Severity.WARNING, code="AffixMismatch",
                message=f"{record.source} -> {record.target} does not fit {record.affix}",
            ))
        checked.append(record)
    return checked, diagnostics


def cmd_fuse_derivations(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> ExitStatus:
    tasks = [DerivationTask(path=path, language=args.language or Path(path).stem) for path in args.paths]
    batches = run_ordered(read_derivation_file, tasks, jobs=args.jobs or get_config().system.jobs)

    records: list[DerivationRecord] = []
    diagnostics: list[Diagnostic] = []
    for batch in batches:
        for item in batch:
            (diagnostics if isinstance(item, Diagnostic) else records).append(item)

    result = fuse(records)
    diagnostics.extend(result.diagnostics)
    fused = result.records
    if args.infer_affixes:
        fused, affix_diagnostics = check_affixes(fused)
        diagnostics.extend(affix_diagnostics)
    write_diagnostics(diagnostics, stderr)

    with_language = len({r.language for r in fused}) > 1
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            write_derivations(fused, handle, with_language=with_language)
    else:
        write_derivations(fused, stdout, with_language=with_language)
    if args.stats:
        render_derivation_stats(fused, make_console(stdout))
    return exit_status(diagnostics, strict=args.strict)


# --- eval-ud ---


def cmd_eval_ud(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> ExitStatus:
    mapping = load_mapping_profile(args.profile)
    schema_profile = load_profile(args.schema_profile)
    unimorph_items = read_inflection_file(args.unimorph)
    index = build_index(unimorph_items, schema_profile)

    with open_text(args.conllu) as handle:
        tokens = list(read_conllu(handle, path=args.conllu))
    diagnostics = [t for t in tokens if isinstance(t, Diagnostic)]
    diagnostics += [i for i in unimorph_items if isinstance(i, Diagnostic)]
    write_diagnostics(diagnostics, stderr)

    partial = args.partial or get_config().evaluation.partial_match
    report = evaluate(index, tokens, mapping, partial=partial)
    if args.format == "tsv":
        render_report_tsv(report, stdout)
    else:
        render_report_table(report, make_console(stdout))
    return exit_status(diagnostics, strict=args.strict)


COMMANDS = {
    "validate": cmd_validate,
    "convert": cmd_convert,
    "segment": cmd_segment,
    "infer-paradigms": cmd_infer_paradigms,
    "fuse-derivations": cmd_fuse_derivations,
    "eval-ud": cmd_eval_ud,
}


def dispatch(args: argparse.Namespace, stdout: Optional[TextIO] = None,
             stderr: Optional[TextIO] = None) -> ExitStatus:
    handler = COMMANDS[args.command]
    return handler(args, stdout or sys.stdout, stderr or sys.stderr)
