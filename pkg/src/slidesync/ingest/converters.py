"""
Converters from vendor outputs into the slidesync interchange formats.

- Amazon Textract layout analysis (``Blocks`` with ``LAYOUT_*`` and ``LINE`` types)
  becomes a SlideDocument.
- WhisperX results (``segments`` with optional per-word timings) become a Transcript.
"""
import logging
from typing import Any, Dict, List, Tuple

from .parsers import IngestWarning, SchemaError
from ..classes.region import Region, RegionKind
from ..classes.slide import SlideDocument
from ..classes.transcript import TimedWord, Transcript, TranscriptLine
from ..utility.geometry import clamp_to_unit

logger = logging.getLogger(__name__)

VISUAL_LAYOUT_TYPES = {"LAYOUT_FIGURE"}
CONTAINER_LAYOUT_TYPES = {"LAYOUT_LIST"}


def _collect_text(block: Dict[str, Any], blocks_by_id: Dict[str, Dict[str, Any]], depth: int = 0) -> List[str]:
    if depth > 8:
        return []
    texts = []
    for relationship in block.get("Relationships", []) or []:
        if relationship.get("Type") != "CHILD":
            continue
        for child_id in relationship.get("Ids", []):
            child = blocks_by_id.get(child_id)
            if child is None:
                continue
            if child.get("BlockType") == "LINE":
                texts.append(child.get("Text", ""))
            elif str(child.get("BlockType", "")).startswith("LAYOUT_"):
                texts.extend(_collect_text(child, blocks_by_id, depth + 1))
    return texts


def textract_to_slide(
    textract: Dict[str, Any], slide_id: str, image_path: str, image_size: Tuple[int, int]
) -> Tuple[SlideDocument, List[IngestWarning]]:
    """
    Build a SlideDocument from a Textract response with layout analysis.

    Every LAYOUT_* block becomes one region in document order (LAYOUT_LIST containers
    are skipped, their items are kept). LAYOUT_FIGURE maps to a visual region, all
    others to textual regions. Textual blocks without any text are dropped.
    """
    blocks = textract.get("Blocks")
    if not isinstance(blocks, list):
        raise SchemaError("textract.Blocks", "required", "expected a 'Blocks' array")
    blocks_by_id = {block.get("Id"): block for block in blocks if isinstance(block, dict)}
    regions = []
    warnings = []
    for block in blocks:
        if not isinstance(block, dict):
            continue
        block_type = str(block.get("BlockType", ""))
        if not block_type.startswith("LAYOUT_") or block_type in CONTAINER_LAYOUT_TYPES:
            continue
        geometry = block.get("Geometry", {}).get("BoundingBox", {})
        try:
            bbox = clamp_to_unit((float(geometry["Left"]), float(geometry["Top"]),
                                  float(geometry["Width"]), float(geometry["Height"])))
        except (KeyError, TypeError, ValueError):
            warnings.append(IngestWarning(f"textract:{block.get('Id')}", f"{block_type} block without a bounding box skipped"))
            continue
        if bbox[2] <= 0 or bbox[3] <= 0:
            warnings.append(IngestWarning(f"textract:{block.get('Id')}", f"{block_type} block outside the page skipped"))
            continue
        text = " ".join(t.strip() for t in _collect_text(block, blocks_by_id) if t.strip())
        kind = RegionKind.VISUAL if block_type in VISUAL_LAYOUT_TYPES else RegionKind.TEXTUAL
        if kind == RegionKind.TEXTUAL and not text:
            warnings.append(IngestWarning(f"textract:{block.get('Id')}", f"{block_type} block without text skipped"))
            continue
        confidence = block.get("Confidence")
        confidence = round(float(confidence) / 100.0, 4) if isinstance(confidence, (int, float)) else None
        regions.append(Region(id=f"R{len(regions) + 1}", kind=kind, bbox=bbox, text=text, confidence=confidence))
    for warning in warnings:
        logger.warning(str(warning))
    slide = SlideDocument(slide_id=slide_id, image_path=image_path, image_size=tuple(image_size), regions=tuple(regions))
    return slide, warnings


def whisperx_to_transcript(whisperx: Dict[str, Any], slide_id: str) -> Tuple[Transcript, List[IngestWarning]]:
    """
    Build a Transcript from a WhisperX result. Segments become lines L1..Ln; word
    timings are kept only when every word of the segment carries start and end (WhisperX
    leaves numerals unaligned).
    """
    if not isinstance(whisperx, dict):
        raise SchemaError("whisperx", "type", "expected a JSON object")
    segments = whisperx.get("segments")
    if not isinstance(segments, list):
        raise SchemaError("whisperx.segments", "required", "expected a 'segments' array")
    lines = []
    warnings = []
    for index, segment in enumerate(segments):
        try:
            t_start, t_end = float(segment["start"]), float(segment["end"])
            text = str(segment.get("text", "")).strip()
        except (KeyError, TypeError, ValueError, OverflowError):
            warnings.append(IngestWarning(f"whisperx:segment[{index}]", "segment without start/end skipped"))
            continue
        if t_end <= t_start:
            warnings.append(IngestWarning(f"whisperx:segment[{index}]", f"empty interval [{t_start}, {t_end}] skipped"))
            continue
        words = None
        raw_words = segment.get("words")
        if isinstance(raw_words, list) and raw_words:
            try:
                words = tuple(TimedWord(str(w.get("word", "")).strip(), float(w["start"]), float(w["end"]))
                              for w in raw_words)
            except (AttributeError, KeyError, TypeError, ValueError, OverflowError):
                warnings.append(IngestWarning(f"whisperx:segment[{index}]", "unaligned words, word timings dropped"))
        lines.append(TranscriptLine(line_id=f"L{len(lines) + 1}", text=text, t_start=t_start, t_end=t_end, words=words))
    lines.sort(key=lambda line: line.t_start)
    for warning in warnings:
        logger.warning(str(warning))
    return Transcript(slide_id=slide_id, lines=tuple(lines)), warnings
