"""
Parsers and writers for the slidesync JSON interchange formats: slide layouts,
transcripts, ground truth and alignments.

Parsers take raw bytes and either return a validated value or raise a structured
IngestError; they never let other exceptions escape. Warnings (overlapping ASR lines,
duplicated ground-truth ids) are returned alongside the value, not printed.
"""
import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..classes.alignment import AlignmentResult, GroundTruth, RegionMatch
from ..classes.region import Region, RegionKind
from ..classes.slide import SlideDocument
from ..classes.transcript import TimedWord, Transcript, TranscriptLine
from ..utility.constants import SCORE_DECIMALS
from ..utility.files import canonical_json

logger = logging.getLogger(__name__)

UTF8_BOM = b"\xef\xbb\xbf"


class IngestError(Exception):
    pass


class ParseError(IngestError):
    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (at byte {byte_offset})")
        self.byte_offset = byte_offset


class SchemaError(IngestError):
    def __init__(self, field: str, rule: str, message: str = ""):
        super().__init__(f"{field}: {rule}" + (f" ({message})" if message else ""))
        self.field = field
        self.rule = rule


@dataclass(frozen=True)
class IngestWarning:
    source: str
    message: str

    def __str__(self) -> str:
        return f"{self.source}: {self.message}"


def load_json_bytes(data: bytes) -> Any:
    """Decode UTF-8 JSON, reporting failures with a byte offset."""
    if not isinstance(data, (bytes, bytearray)):
        raise ParseError("input must be bytes", 0)
    data = bytes(data)
    skipped = len(UTF8_BOM) if data.startswith(UTF8_BOM) else 0
    try:
        text = data[skipped:].decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"invalid UTF-8: {e.reason}", skipped + e.start) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        offset = skipped + len(text[:e.pos].encode("utf-8"))
        raise ParseError(f"malformed JSON: {e.msg}", offset) from e
    except (ValueError, RecursionError) as e:
        raise ParseError(f"unreadable JSON: {e}", skipped) from e


# -- field helpers -------------------------------------------------------------------

def _require(obj: Dict[str, Any], key: str, field: str) -> Any:
    if key not in obj:
        raise SchemaError(field, "required", f"missing key '{key}'")
    return obj[key]


def _as_object(value: Any, field: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise SchemaError(field, "type", "expected an object")
    return value


def _as_list(value: Any, field: str) -> List[Any]:
    if not isinstance(value, list):
        raise SchemaError(field, "type", "expected an array")
    return value


def _as_str(value: Any, field: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(field, "type", "expected a string")
    return value


def _as_number(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(field, "type", "expected a number")
    try:
        value = float(value)
    except OverflowError:
        raise SchemaError(field, "finite", "number out of range")
    if not math.isfinite(value):
        raise SchemaError(field, "finite", "number must be finite")
    return value


def _as_int(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(field, "type", "expected an integer")
    return value


def _raise_violations(violations) -> None:
    if violations:
        first = violations[0]
        details = "; ".join(str(v) for v in violations)
        raise SchemaError(first.entity, first.rule, details)


# -- slide layout --------------------------------------------------------------------

def _parse_region(raw: Any, field: str) -> Region:
    raw = _as_object(raw, field)
    region_id = _as_str(_require(raw, "id", field), f"{field}.id")
    field = f"region:{region_id}"
    kind_name = _as_str(_require(raw, "kind", field), f"{field}.kind")
    try:
        kind = RegionKind(kind_name)
    except ValueError:
        raise SchemaError(f"{field}.kind", "enum", f"'{kind_name}' is not one of textual, visual")
    bbox = _as_list(_require(raw, "bbox", field), f"{field}.bbox")
    if len(bbox) != 4:
        raise SchemaError(f"{field}.bbox", "length", "bbox must be [x, y, width, height]")
    bbox = tuple(_as_number(v, f"{field}.bbox") for v in bbox)
    if kind == RegionKind.TEXTUAL:
        text = _as_str(_require(raw, "text", field), f"{field}.text")
    else:
        text = _as_str(raw.get("text", ""), f"{field}.text")
    confidence = raw.get("confidence")
    if confidence is not None:
        confidence = _as_number(confidence, f"{field}.confidence")
    return Region(id=region_id, kind=kind, bbox=bbox, text=text, confidence=confidence)


def parse_slide_layout(data: bytes) -> SlideDocument:
    """Parse Slide Layout JSON into a validated SlideDocument. Unknown keys are ignored."""
    raw = _as_object(load_json_bytes(data), "slide")
    slide_id = _as_str(_require(raw, "slide_id", "slide"), "slide.slide_id")
    field = f"slide:{slide_id}"
    image_path = _as_str(_require(raw, "image_path", field), f"{field}.image_path")
    size = _as_list(_require(raw, "image_size", field), f"{field}.image_size")
    if len(size) != 2:
        raise SchemaError(f"{field}.image_size", "length", "image_size must be [width, height]")
    image_size = (_as_int(size[0], f"{field}.image_size"), _as_int(size[1], f"{field}.image_size"))
    regions = tuple(
        _parse_region(item, f"{field}.regions[{index}]")
        for index, item in enumerate(_as_list(_require(raw, "regions", field), f"{field}.regions"))
    )
    slide = SlideDocument(slide_id=slide_id, image_path=image_path, image_size=image_size, regions=regions)
    _raise_violations(slide.violations())
    return slide


def slide_layout_to_dict(slide: SlideDocument) -> Dict[str, Any]:
    regions = []
    for region in slide.regions:
        entry = {"id": region.id, "kind": region.kind.value, "bbox": list(region.bbox), "text": region.text}
        if region.confidence is not None:
            entry["confidence"] = region.confidence
        regions.append(entry)
    return {
        "slide_id": slide.slide_id,
        "image_path": slide.image_path,
        "image_size": list(slide.image_size),
        "regions": regions,
    }


def write_slide_layout(slide: SlideDocument) -> bytes:
    return canonical_json(slide_layout_to_dict(slide))


# -- transcript ----------------------------------------------------------------------

def _parse_line(raw: Any, field: str) -> TranscriptLine:
    raw = _as_object(raw, field)
    line_id = _as_str(_require(raw, "line_id", field), f"{field}.line_id")
    field = f"line:{line_id}"
    text = _as_str(_require(raw, "text", field), f"{field}.text")
    t_start = _as_number(_require(raw, "t_start", field), f"{field}.t_start")
    t_end = _as_number(_require(raw, "t_end", field), f"{field}.t_end")
    if t_end <= t_start:
        raise SchemaError(f"{field}.t_end", "t-start-before-t-end", f"t_end {t_end} must be > t_start {t_start}")
    words = None
    if raw.get("words") is not None:
        words = []
        for index, item in enumerate(_as_list(raw["words"], f"{field}.words")):
            word_field = f"{field}.words[{index}]"
            item = _as_object(item, word_field)
            words.append(TimedWord(
                word=_as_str(_require(item, "w", word_field), f"{word_field}.w"),
                t_start=_as_number(_require(item, "s", word_field), f"{word_field}.s"),
                t_end=_as_number(_require(item, "e", word_field), f"{word_field}.e"),
            ))
        words = tuple(words)
    return TranscriptLine(line_id=line_id, text=text, t_start=t_start, t_end=t_end, words=words)


def parse_transcript(data: bytes) -> Tuple[Transcript, List[IngestWarning]]:
    """
    Parse Transcript JSON. Lines are returned sorted by t_start (stable); overlapping
    line intervals are accepted and reported as warnings.
    """
    raw = _as_object(load_json_bytes(data), "transcript")
    slide_id = _as_str(_require(raw, "slide_id", "transcript"), "transcript.slide_id")
    field = f"transcript:{slide_id}"
    lines = [
        _parse_line(item, f"{field}.lines[{index}]")
        for index, item in enumerate(_as_list(_require(raw, "lines", field), f"{field}.lines"))
    ]
    lines.sort(key=lambda line: line.t_start)
    transcript = Transcript(slide_id=slide_id, lines=tuple(lines))
    _raise_violations(transcript.violations())

    warnings = []
    for previous, current in zip(lines, lines[1:]):
        if current.t_start < previous.t_end:
            warning = IngestWarning(field, f"line {current.line_id} starts at {current.t_start} "
                                           f"before line {previous.line_id} ends at {previous.t_end}")
            logger.warning(str(warning))
            warnings.append(warning)
    return transcript, warnings


def transcript_to_dict(transcript: Transcript) -> Dict[str, Any]:
    lines = []
    for line in transcript.lines:
        entry = {"line_id": line.line_id, "text": line.text, "t_start": line.t_start, "t_end": line.t_end}
        if line.words is not None:
            entry["words"] = [{"w": w.word, "s": w.t_start, "e": w.t_end} for w in line.words]
        lines.append(entry)
    return {"slide_id": transcript.slide_id, "lines": lines}


def write_transcript(transcript: Transcript) -> bytes:
    return canonical_json(transcript_to_dict(transcript))


# -- ground truth --------------------------------------------------------------------

def parse_ground_truth(data: bytes) -> Tuple[GroundTruth, List[IngestWarning]]:
    """Parse Ground Truth JSON. Empty region lists are legal; duplicate ids are dropped with a warning."""
    raw = _as_object(load_json_bytes(data), "ground_truth")
    slide_id = _as_str(_require(raw, "slide_id", "ground_truth"), "ground_truth.slide_id")
    field = f"ground_truth:{slide_id}"
    raw_lines = _as_object(_require(raw, "lines", field), f"{field}.lines")
    lines = {}
    warnings = []
    for line_id, region_ids in raw_lines.items():
        line_field = f"{field}/line:{line_id}"
        ids = [_as_str(rid, line_field) for rid in _as_list(region_ids, line_field)]
        unique = frozenset(ids)
        if len(unique) != len(ids):
            duplicates = sorted({rid for rid in ids if ids.count(rid) > 1})
            warning = IngestWarning(line_field, f"duplicate region ids {duplicates} deduplicated")
            logger.warning(str(warning))
            warnings.append(warning)
        lines[line_id] = unique
    return GroundTruth(slide_id=slide_id, lines=lines), warnings


def write_ground_truth(truth: GroundTruth) -> bytes:
    return canonical_json({
        "slide_id": truth.slide_id,
        "lines": {line_id: sorted(ids) for line_id, ids in truth.lines.items()},
    })


# -- alignment -----------------------------------------------------------------------

def write_alignment(result: AlignmentResult) -> bytes:
    """Canonical Alignment JSON: sorted keys, scores rounded to six decimals."""
    return canonical_json({
        "slide_id": result.slide_id,
        "matcher": result.matcher,
        "lines": {
            line_id: [{"region_id": m.region_id, "score": round(m.score, SCORE_DECIMALS)} for m in matches]
            for line_id, matches in result.lines.items()
        },
    })


def read_alignment(data: bytes) -> AlignmentResult:
    raw = _as_object(load_json_bytes(data), "alignment")
    slide_id = _as_str(_require(raw, "slide_id", "alignment"), "alignment.slide_id")
    field = f"alignment:{slide_id}"
    matcher = _as_str(_require(raw, "matcher", field), f"{field}.matcher")
    lines = {}
    for line_id, matches in _as_object(_require(raw, "lines", field), f"{field}.lines").items():
        line_field = f"{field}/line:{line_id}"
        parsed = []
        for item in _as_list(matches, line_field):
            item = _as_object(item, line_field)
            parsed.append(RegionMatch(
                region_id=_as_str(_require(item, "region_id", line_field), f"{line_field}.region_id"),
                score=_as_number(_require(item, "score", line_field), f"{line_field}.score"),
                matcher_tag=matcher,
            ))
        lines[line_id] = tuple(parsed)
    result = AlignmentResult(slide_id=slide_id, matcher=matcher, lines=lines)
    _raise_violations(result.violations())
    return result
