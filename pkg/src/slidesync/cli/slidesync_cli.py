#!/usr/bin/env python3

"""
Command line entry point for slidesync: align transcripts with slide regions, correct
transcripts, evaluate, compute corpus statistics, and build/render highlight overlays.

Every subcommand reads files and writes JSON files (or JSON on stdout); --pretty adds
human-readable tables. Exit codes: 0 success, 1 fatal error, 2 completed with
diagnostics, 64 usage error.
"""

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from ..classes.alignment import AlignmentResult, Diagnostic
from ..classes.policy import ThresholdPolicy
from ..classes.validation import validate_dataset
from ..correction.lexicon import correct_transcript_lexical
from ..correction.llm_correction import correct_llm
from ..highlight.renderer import RenderError, render_schedule
from ..highlight.schedule import (GapPolicy, HighlightStyle, ScheduleError, StyleParams, build_schedule,
                                  merge_schedules, parse_schedule, write_schedule)
from ..ingest.manifest import DatasetEntry, DatasetHelper, load_manifest
from ..ingest.parsers import IngestError, parse_transcript, read_alignment, write_alignment, write_transcript
from ..matchers.align import create_matcher
from ..matchers.config import MatcherConfig, MatcherError, MatcherMethod
from ..metrics.alignment_metrics import evaluate_dataset
from ..metrics.asr_metrics import evaluate_transcripts
from ..metrics.corpus_stats import corpus_stats
from ..providers.embedding import create_embedding_provider
from ..providers.llm import create_llm_provider
from ..providers.specs import ProviderConfig, load_provider_config
from ..providers.transport import ProviderError
from ..utility.constants import (DEFAULT_MAX_IN_FLIGHT, EXIT_DIAGNOSTICS, EXIT_FATAL, EXIT_OK, EXIT_USAGE,
                                 THRESHOLD_PRESETS)
from ..utility.files import atomic_write_bytes, canonical_json, write_json
from ..utility.logs import LOG_FORMAT, configure_logging

logging.basicConfig(format=LOG_FORMAT)
logger = logging.getLogger(__name__)

DIAGNOSTICS_FILE = "diagnostics.json"
# files the pipeline writes next to per-slide outputs
ARTIFACT_FILES = {DIAGNOSTICS_FILE, "index.json", "summary.json"}
METHOD_CHOICES = ["fuzzy", "embedding", "llm-yes-no", "llm-select"]
POLICY_CHOICES = list(THRESHOLD_PRESETS) + ["custom"]
FATAL_ERRORS = (IngestError, ProviderError, MatcherError, ScheduleError, RenderError, OSError, ValueError)


class UsageError(Exception):
    pass


class SlidesyncArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def set_loglevel(name: Optional[str]) -> None:
    if not name:
        return
    try:
        configure_logging(name)
    except ValueError as e:
        raise UsageError(str(e)) from e


# -- shared helpers ------------------------------------------------------------------

def load_dataset(args) -> DatasetHelper:
    manifest = load_manifest(args.manifest)
    return DatasetHelper(manifest, jobs=args.jobs, transcript_dir=getattr(args, "transcripts", None))


def load_providers(args) -> ProviderConfig:
    if not getattr(args, "provider_config", None):
        return ProviderConfig()
    config = load_provider_config(args.provider_config)
    if config.uses_network:
        logger.info(f"Provider config {args.provider_config} enables network access")
    return config


def resolve_policy(args) -> ThresholdPolicy:
    if args.policy == "custom":
        if args.textual_th is None:
            raise UsageError("--policy custom requires --textual-th")
        visual = args.visual_th if args.visual_th is not None else THRESHOLD_PRESETS["T-1"][1]
        return ThresholdPolicy(args.textual_th, visual, "custom")
    if args.textual_th is not None or args.visual_th is not None:
        raise UsageError("--textual-th/--visual-th are only valid with --policy custom")
    return ThresholdPolicy.from_preset(args.policy)


def build_matcher_config(method: MatcherMethod, policy: ThresholdPolicy, providers: ProviderConfig,
                         max_in_flight: int) -> MatcherConfig:
    embedding = llm = None
    if method == MatcherMethod.EMBEDDING:
        if providers.embedding is None:
            raise UsageError("--method embedding requires a --provider-config with an 'embedding' section")
        embedding = create_embedding_provider(providers.embedding)
    if method.is_llm:
        if providers.llm is None:
            raise UsageError(f"--method {method.value} requires a --provider-config with an 'llm' section")
        llm = create_llm_provider(providers.llm)
    return MatcherConfig(method=method, policy=policy, embedding_provider=embedding, llm_provider=llm,
                         max_in_flight=max_in_flight)


def align_entries(entries: Sequence[DatasetEntry], config: MatcherConfig, jobs: int) -> List[AlignmentResult]:
    matcher = create_matcher(config)
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(lambda entry: matcher.align(entry.slide, entry.transcript), entries))


def write_diagnostics(out_dir: Path, diagnostics: Sequence[Diagnostic]) -> None:
    path = out_dir / DIAGNOSTICS_FILE
    if diagnostics:
        write_json(path, {"diagnostics": [d.to_dict() for d in diagnostics]})
        logger.warning(f"{len(diagnostics)} diagnostics written to {path}")
    elif path.exists():
        path.unlink()


def emit(args, value, table: Optional[pd.DataFrame] = None, text: Optional[str] = None) -> None:
    """JSON to --out (or stdout); with --pretty a table on stdout as well."""
    if getattr(args, "out", None):
        write_json(args.out, value)
        logger.info(f"Wrote {args.out}")
    else:
        sys.stdout.write(canonical_json(value).decode("utf-8"))
    if args.pretty:
        if table is not None:
            text = table.to_string(float_format=lambda v: f"{v:.4f}") + "\n"
        if text:
            sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------------

def cmd_align(args) -> int:
    policy = resolve_policy(args)
    method = MatcherMethod.from_string(args.method)
    config = build_matcher_config(method, policy, load_providers(args), args.max_in_flight)
    dataset = load_dataset(args)
    logger.info(f"Aligning {len(dataset.entries)} slides with {method.value}, policy {policy}")
    results = align_entries(dataset.get_all_entries(), config, args.jobs)
    out_dir = Path(args.out)
    for result in results:
        atomic_write_bytes(out_dir / f"{result.slide_id}.json", write_alignment(result))
    diagnostics = [d for result in results for d in result.diagnostics]
    write_diagnostics(out_dir, diagnostics)
    return EXIT_DIAGNOSTICS if diagnostics else EXIT_OK


def cmd_correct(args) -> int:
    dataset = load_dataset(args)
    out_dir = Path(args.out)
    diagnostics: List[Diagnostic] = []
    entries = dataset.get_all_entries()
    if args.backend == "llm":
        providers = load_providers(args)
        if providers.llm is None:
            raise UsageError("--backend llm requires a --provider-config with an 'llm' section")
        provider = create_llm_provider(providers.llm)
        with ThreadPoolExecutor(max_workers=args.jobs) as executor:
            outcomes = list(executor.map(
                lambda entry: correct_llm(entry.transcript, entry.slide, provider, args.max_in_flight), entries))
        for transcript, slide_diagnostics in outcomes:
            atomic_write_bytes(out_dir / f"{transcript.slide_id}.json", write_transcript(transcript))
            diagnostics.extend(slide_diagnostics)
    else:
        with ThreadPoolExecutor(max_workers=args.jobs) as executor:
            outcomes = list(executor.map(lambda entry: correct_transcript_lexical(entry.transcript, entry.slide),
                                         entries))
        for transcript, logs in outcomes:
            atomic_write_bytes(out_dir / f"{transcript.slide_id}.json", write_transcript(transcript))
            write_json(out_dir / "substitutions" / f"{transcript.slide_id}.json", [log.to_dict() for log in logs])
    write_diagnostics(out_dir, diagnostics)
    return EXIT_DIAGNOSTICS if diagnostics else EXIT_OK


def _read_alignments(dataset: DatasetHelper, pred_dir: Path) -> Dict[str, AlignmentResult]:
    results = {}
    for slide_id in dataset.get_all_slide_ids():
        path = pred_dir / f"{slide_id}.json"
        if not path.exists():
            raise IngestError(f"no alignment for slide {slide_id} at {path}")
        results[slide_id] = read_alignment(path.read_bytes())
    return results


def _scores_table(scores) -> pd.DataFrame:
    avg = scores.averages
    return pd.DataFrame([{"lines": scores.count, "S_c": avg.sc, "S_m": avg.sm, "P": avg.p, "R": avg.r, "F1": avg.f1}])


def cmd_eval_align(args) -> int:
    dataset = load_dataset(args)
    results = _read_alignments(dataset, Path(args.pred))
    pairs = []
    for entry in dataset.get_all_entries():
        if entry.ground_truth is None:
            logger.warning(f"Slide {entry.slide_id} has no ground truth; skipped")
            continue
        pairs.append((results[entry.slide_id], entry.ground_truth))
    scores = evaluate_dataset(pairs)
    emit(args, scores.to_dict(), table=_scores_table(scores))
    return EXIT_OK


def _read_transcripts(path: Path) -> Dict[str, object]:
    files = [path] if path.is_file() else sorted(p for p in path.glob("*.json") if p.name not in ARTIFACT_FILES)
    transcripts = {}
    for file in files:
        transcript, _ = parse_transcript(file.read_bytes())
        transcripts[transcript.slide_id] = transcript
    return transcripts


def cmd_eval_asr(args) -> int:
    refs = _read_transcripts(Path(args.ref))
    hyps = _read_transcripts(Path(args.hyp))
    missing = sorted(set(refs) - set(hyps))
    if missing:
        raise IngestError(f"no hypothesis transcript for slides {missing}")
    scores = evaluate_transcripts((refs[slide_id], hyps[slide_id]) for slide_id in sorted(refs))
    table = pd.DataFrame([{"samples": len(scores.per_sample), **scores.averages}])
    emit(args, scores.to_dict(), table=table)
    return EXIT_OK


def cmd_stats(args) -> int:
    stats = corpus_stats(load_dataset(args).get_all_entries())
    emit(args, stats.to_dict(), text=stats.to_text())
    return EXIT_OK


def style_params(args) -> StyleParams:
    defaults = StyleParams()
    return StyleParams(
        stroke_color=args.stroke_color or defaults.stroke_color,
        fill_color=args.fill_color or defaults.fill_color,
        fill_opacity=args.fill_opacity if args.fill_opacity is not None else defaults.fill_opacity,
        magnify_scale=args.magnify_scale if args.magnify_scale is not None else defaults.magnify_scale,
    )


def cmd_schedule(args) -> int:
    dataset = load_dataset(args)
    results = _read_alignments(dataset, Path(args.alignment))
    style = HighlightStyle.from_string(args.style)
    gap_policy = GapPolicy.from_string(args.gap_policy)
    params = style_params(args)
    schedules = [build_schedule(results[entry.slide_id], entry.transcript, style, params, gap_policy)
                 for entry in dataset.get_all_entries()]
    schedule = merge_schedules(schedules, gap_policy)
    atomic_write_bytes(Path(args.out), write_schedule(schedule))
    logger.info(f"Wrote schedule with {len(schedule.events)} events to {args.out}")
    return EXIT_OK


def cmd_render(args) -> int:
    dataset = load_dataset(args)
    schedule = parse_schedule(Path(args.schedule).read_bytes())
    slides = {entry.slide_id: entry.slide for entry in dataset.get_all_entries()}
    render_schedule(slides, schedule, args.out_dir, jobs=args.jobs)
    return EXIT_OK


def cmd_sweep(args) -> int:
    providers = load_providers(args)
    dataset = load_dataset(args)
    entries = [entry for entry in dataset.get_all_entries() if entry.ground_truth is not None]
    out_dir = Path(args.out)
    rows = []
    diagnostics: List[Diagnostic] = []
    for method_name in args.methods:
        method = MatcherMethod.from_string(method_name)
        for policy_name in args.policies:
            policy = ThresholdPolicy.from_preset(policy_name)
            config = build_matcher_config(method, policy, providers, args.max_in_flight)
            results = align_entries(entries, config, args.jobs)
            diagnostics.extend(d for result in results for d in result.diagnostics)
            scores = evaluate_dataset(zip(results, (entry.ground_truth for entry in entries)))
            write_json(out_dir / f"{method.value}_{policy_name}.json", scores.to_dict())
            avg = scores.averages
            rows.append({"method": method.value, "policy": policy_name, "S_c": avg.sc, "S_m": avg.sm,
                         "P": avg.p, "R": avg.r, "F1": avg.f1})
            logger.info(f"{method.value} [{policy_name}]: S_c={avg.sc:.3f} S_m={avg.sm:.3f}")
    summary = {"transcripts": str(args.transcripts) if args.transcripts else "manifest", "cells": rows}
    write_json(out_dir / "summary.json", summary)
    write_diagnostics(out_dir, diagnostics)
    if args.pretty:
        sys.stdout.write(pd.DataFrame(rows).to_string(index=False, float_format=lambda v: f"{v:.3f}") + "\n")
    return EXIT_DIAGNOSTICS if diagnostics else EXIT_OK


def cmd_validate(args) -> int:
    dataset = load_dataset(args)
    entries = dataset.get_all_entries()
    violations = validate_dataset([e.slide for e in entries], [e.transcript for e in entries],
                                  [e.ground_truth for e in entries if e.ground_truth is not None])
    report = {"violations": [{"entity": v.entity, "rule": v.rule, "message": v.message} for v in violations],
              "warnings": [str(w) for w in dataset.warnings]}
    sys.stdout.write(canonical_json(report).decode("utf-8"))
    if args.pretty:
        for violation in violations:
            sys.stdout.write(f"{violation}\n")
    return EXIT_DIAGNOSTICS if violations else EXIT_OK


# -- argument parsing ----------------------------------------------------------------

def positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def unit_float(value: str) -> float:
    number = float(value)
    if not 0.0 <= number <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a value in [0, 1], got {value}")
    return number


def comma_list(value: str) -> List[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = SlidesyncArgumentParser(add_help=False)
    common.add_argument("-l", "--loglevel", type=str, help="set log level")
    common.add_argument("--jobs", type=positive_int, default=os.cpu_count() or 1,
                        help="slides processed in parallel (default: number of processors)")
    common.add_argument("--max-in-flight", type=positive_int, default=DEFAULT_MAX_IN_FLIGHT,
                        help="concurrent provider requests per slide")
    common.add_argument("--pretty", action="store_true", help="also print human-readable tables")

    parser = SlidesyncArgumentParser(prog="slidesync", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("align", parents=[common], help="align transcript lines with slide regions")
    p.add_argument("--manifest", required=True)
    p.add_argument("--method", required=True, choices=METHOD_CHOICES)
    p.add_argument("--policy", required=True, choices=POLICY_CHOICES)
    p.add_argument("--textual-th", type=unit_float)
    p.add_argument("--visual-th", type=unit_float)
    p.add_argument("--provider-config")
    p.add_argument("--transcripts", help="directory of {slide_id}.json transcripts replacing the manifest's")
    p.add_argument("--out", required=True, help="output directory for Alignment JSON")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("correct", parents=[common], help="post-correct transcripts with slide text")
    p.add_argument("--manifest", required=True)
    p.add_argument("--backend", required=True, choices=["lexicon", "llm"])
    p.add_argument("--provider-config")
    p.add_argument("--transcripts")
    p.add_argument("--out", required=True, help="output directory for corrected Transcript JSON")
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("eval-align", parents=[common], help="score alignments against ground truth")
    p.add_argument("--manifest", required=True)
    p.add_argument("--pred", required=True, help="directory of Alignment JSON")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval_align)

    p = sub.add_parser("eval-asr", parents=[common], help="transcription error rates")
    p.add_argument("--ref", required=True, help="reference transcript file or directory")
    p.add_argument("--hyp", required=True, help="hypothesis transcript file or directory")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval_asr)

    p = sub.add_parser("stats", parents=[common], help="corpus statistics")
    p.add_argument("--manifest", required=True)
    p.add_argument("--transcripts")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("schedule", parents=[common], help="build a highlight schedule from alignments")
    p.add_argument("--manifest", required=True)
    p.add_argument("--alignment", required=True, help="directory of Alignment JSON")
    p.add_argument("--style", required=True, choices=[s.value for s in HighlightStyle])
    p.add_argument("--gap-policy", default=GapPolicy.HOLD_PREVIOUS.value, choices=[g.value for g in GapPolicy])
    p.add_argument("--stroke-color")
    p.add_argument("--fill-color")
    p.add_argument("--fill-opacity", type=unit_float)
    p.add_argument("--magnify-scale", type=float)
    p.add_argument("--transcripts")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("render", parents=[common], help="render a schedule as SVG overlays")
    p.add_argument("--manifest", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("sweep", parents=[common], help="score every (method, policy) cell")
    p.add_argument("--manifest", required=True)
    p.add_argument("--methods", type=comma_list, default=["fuzzy"])
    p.add_argument("--policies", type=comma_list, default=["T-1", "T-2", "T-3"])
    p.add_argument("--provider-config")
    p.add_argument("--transcripts")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", parents=[common], help="check dataset invariants")
    p.add_argument("--manifest", required=True)
    p.add_argument("--transcripts")
    p.set_defaults(func=cmd_validate)
    return parser


def _check_sweep_args(args) -> None:
    for name in args.methods:
        try:
            MatcherMethod.from_string(name)
        except ValueError as e:
            raise UsageError(str(e))
    for name in args.policies:
        if name not in THRESHOLD_PRESETS:
            raise UsageError(f"unknown preset '{name}'; sweep takes presets only")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        set_loglevel(args.loglevel)
        if args.command == "sweep":
            _check_sweep_args(args)
        return args.func(args)
    except UsageError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except FATAL_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
