"""Builders shared by the test suites."""
import json
from pathlib import Path
from typing import Dict, Iterable, Sequence, Tuple, Union

from slidesync.classes.region import Region, RegionKind
from slidesync.classes.slide import SlideDocument
from slidesync.classes.transcript import Transcript, TranscriptLine
from slidesync.providers.llm import prompt_hash

ROOT = Path(__file__).resolve().parent.parent
SAMPLE_DIR = ROOT / "sample_data"
SAMPLE_MANIFEST = SAMPLE_DIR / "manifest.json"
SAMPLE_PROVIDERS = SAMPLE_DIR / "providers.json"
GOLDEN_DIR = ROOT / "tests" / "golden"

# smallest valid PNG (1x1, RGBA)
PNG_1X1 = bytes.fromhex(
    "89504e470d0a1a0a0000000d49484452000000010000000108060000001f"
    "15c4890000000d4944415478da636460f85f0f0002870180eb47ba920000000049454e44ae426082"
)


def make_region(region_id: str, text: str = "", kind: RegionKind = RegionKind.TEXTUAL,
                bbox: Tuple[float, float, float, float] = (0.1, 0.1, 0.2, 0.2)) -> Region:
    return Region(id=region_id, kind=kind, bbox=bbox, text=text)


def make_slide(regions: Sequence[Union[Region, Tuple[str, str]]], slide_id: str = "s1",
               image_path: str = "slide.png", image_size: Tuple[int, int] = (1000, 500)) -> SlideDocument:
    built = tuple(r if isinstance(r, Region) else make_region(*r) for r in regions)
    return SlideDocument(slide_id=slide_id, image_path=image_path, image_size=image_size, regions=built)


def make_transcript(texts: Iterable[str], slide_id: str = "s1", step: float = 2.0) -> Transcript:
    """Lines L1..Ln, each lasting `step` seconds, back to back."""
    lines = tuple(TranscriptLine(f"L{i + 1}", text, i * step, (i + 1) * step) for i, text in enumerate(texts))
    return Transcript(slide_id=slide_id, lines=lines)


def write_script(path: Path, replies: Dict[str, str]) -> Path:
    """Scripted LLM replies keyed by the hash of each exact prompt."""
    path.write_text(json.dumps({prompt_hash(prompt): reply for prompt, reply in replies.items()}), encoding="utf-8")
    return path
