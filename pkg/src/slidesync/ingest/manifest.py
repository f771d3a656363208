import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .parsers import (IngestError, IngestWarning, SchemaError, load_json_bytes, parse_ground_truth,
                      parse_slide_layout, parse_transcript)
from ..classes.alignment import GroundTruth
from ..classes.slide import SlideDocument
from ..classes.transcript import Transcript
from ..utility.files import canonical_json

logger = logging.getLogger(__name__)


class ManifestError(IngestError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    slide_id: str
    slide_path: Path
    transcript_path: Path
    image_path: Path
    ground_truth_path: Optional[Path] = None


@dataclass(frozen=True)
class DatasetManifest:
    entries: Tuple[ManifestEntry, ...]
    metadata: Dict[str, str] = field(default_factory=dict)
    base_dir: Path = Path(".")

    @property
    def slide_ids(self) -> List[str]:
        return [entry.slide_id for entry in self.entries]

    def get_entry(self, slide_id: str) -> Optional[ManifestEntry]:
        return next((entry for entry in self.entries if entry.slide_id == slide_id), None)


def _resolve(base_dir: Path, value, field_name: str, check_exists: bool) -> Path:
    if not isinstance(value, str) or not value:
        raise SchemaError(field_name, "type", "expected a non-empty path string")
    path = Path(value)
    if not path.is_absolute():
        path = base_dir / path
    if check_exists and not path.exists():
        raise ManifestError(f"{field_name}: path '{path}' does not exist")
    return path


def parse_manifest(data: bytes, base_dir: Union[str, Path] = ".", check_paths: bool = True) -> DatasetManifest:
    """
    Parse Manifest JSON. Relative paths resolve against base_dir; entries keep file order.
    """
    base_dir = Path(base_dir)
    raw = load_json_bytes(data)
    if not isinstance(raw, dict) or not isinstance(raw.get("entries"), list):
        raise SchemaError("manifest.entries", "required", "expected an 'entries' array")
    entries = []
    seen = set()
    for index, item in enumerate(raw["entries"]):
        name = f"manifest.entries[{index}]"
        if not isinstance(item, dict):
            raise SchemaError(name, "type", "expected an object")
        slide_id = item.get("slide_id")
        if not isinstance(slide_id, str):
            raise SchemaError(f"{name}.slide_id", "type", "expected a string")
        if slide_id in seen:
            raise SchemaError(f"{name}.slide_id", "slide-id-unique", f"duplicate slide id {slide_id}")
        seen.add(slide_id)
        ground_truth = item.get("ground_truth")
        entries.append(ManifestEntry(
            slide_id=slide_id,
            slide_path=_resolve(base_dir, item.get("slide"), f"{name}.slide", check_paths),
            transcript_path=_resolve(base_dir, item.get("transcript"), f"{name}.transcript", check_paths),
            image_path=_resolve(base_dir, item.get("image"), f"{name}.image", check_paths),
            ground_truth_path=(_resolve(base_dir, ground_truth, f"{name}.ground_truth", check_paths)
                               if ground_truth is not None else None),
        ))
    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict) or not all(isinstance(k, str) and isinstance(v, str) for k, v in metadata.items()):
        raise SchemaError("manifest.metadata", "type", "metadata must map strings to strings")
    return DatasetManifest(entries=tuple(entries), metadata=dict(metadata), base_dir=base_dir)


def load_manifest(path: Union[str, Path]) -> DatasetManifest:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise ManifestError(f"cannot read manifest {path}: {e}") from e
    manifest = parse_manifest(data, base_dir=path.parent)
    logger.info(f"Loaded manifest {path} with {len(manifest.entries)} entries")
    return manifest


def write_manifest(manifest: DatasetManifest) -> bytes:
    def rel(path: Path) -> str:
        try:
            return path.relative_to(manifest.base_dir).as_posix()
        except ValueError:
            return path.as_posix()

    entries = []
    for entry in manifest.entries:
        item = {"slide_id": entry.slide_id, "slide": rel(entry.slide_path),
                "transcript": rel(entry.transcript_path), "image": rel(entry.image_path)}
        if entry.ground_truth_path is not None:
            item["ground_truth"] = rel(entry.ground_truth_path)
        entries.append(item)
    return canonical_json({"entries": entries, "metadata": manifest.metadata})


@dataclass(frozen=True)
class DatasetEntry:
    slide: SlideDocument
    transcript: Transcript
    ground_truth: Optional[GroundTruth] = None
    warnings: Tuple[IngestWarning, ...] = ()

    @property
    def slide_id(self) -> str:
        return self.slide.slide_id


class DatasetHelper:
    """
    Loads every entry of a manifest into model values.

    The manifest's image path overrides the layout's image_path. With transcript_dir
    set, '{transcript_dir}/{slide_id}.json' replaces the manifest transcript (used for
    post-corrected transcripts).
    """

    def __init__(self, manifest: DatasetManifest, jobs: int = 1, transcript_dir: Optional[Union[str, Path]] = None):
        self.manifest = manifest
        self.jobs = max(1, jobs)
        self.transcript_dir = Path(transcript_dir) if transcript_dir is not None else None
        self.entries: Dict[str, DatasetEntry] = {}
        self.load_data()

    def _read(self, path: Path) -> bytes:
        try:
            return path.read_bytes()
        except OSError as e:
            raise ManifestError(f"cannot read {path}: {e}") from e

    def transcript_path_for(self, entry: ManifestEntry) -> Path:
        if self.transcript_dir is not None:
            return self.transcript_dir / f"{entry.slide_id}.json"
        return entry.transcript_path

    def load_entry(self, entry: ManifestEntry) -> DatasetEntry:
        slide = parse_slide_layout(self._read(entry.slide_path))
        if slide.slide_id != entry.slide_id:
            raise ManifestError(f"{entry.slide_path}: slide_id '{slide.slide_id}' does not match manifest '{entry.slide_id}'")
        slide = replace(slide, image_path=str(entry.image_path))
        transcript, warnings = parse_transcript(self._read(self.transcript_path_for(entry)))
        if transcript.slide_id != entry.slide_id:
            raise ManifestError(f"transcript slide_id '{transcript.slide_id}' does not match manifest '{entry.slide_id}'")
        ground_truth = None
        if entry.ground_truth_path is not None:
            ground_truth, gt_warnings = parse_ground_truth(self._read(entry.ground_truth_path))
            warnings = warnings + gt_warnings
        logger.debug(f"Loaded slide {entry.slide_id}: {len(slide.regions)} regions, {len(transcript.lines)} lines")
        return DatasetEntry(slide=slide, transcript=transcript, ground_truth=ground_truth, warnings=tuple(warnings))

    def load_data(self) -> None:
        with ThreadPoolExecutor(max_workers=self.jobs) as executor:
            loaded = list(executor.map(self.load_entry, self.manifest.entries))
        self.entries = {entry.slide_id: entry for entry in loaded}

    def get_entry(self, slide_id: str) -> Optional[DatasetEntry]:
        return self.entries.get(slide_id)

    def get_all_entries(self) -> List[DatasetEntry]:
        return list(self.entries.values())

    def get_all_slide_ids(self) -> List[str]:
        return list(self.entries)

    @property
    def warnings(self) -> List[IngestWarning]:
        return [warning for entry in self.entries.values() for warning in entry.warnings]
