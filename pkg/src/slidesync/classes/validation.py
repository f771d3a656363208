from collections import Counter
from typing import Iterable, List, Optional, Sequence, Union

from .alignment import GroundTruth
from .slide import SlideDocument
from .transcript import Transcript
from .violation import Violation


def validate_dataset(
    slides: Sequence[SlideDocument],
    transcripts: Sequence[Transcript],
    gt: Optional[Union[GroundTruth, Iterable[GroundTruth]]] = None,
) -> List[Violation]:
    """
    Check every model invariant and cross-reference of a dataset.

    Pure and idempotent: violations are returned in a deterministic order (slides,
    then transcripts, then ground truth, each in input order) and nothing is raised.
    """
    found: List[Violation] = []

    slide_counts = Counter(slide.slide_id for slide in slides)
    for slide_id, count in sorted(slide_counts.items()):
        if count > 1:
            found.append(Violation(f"slide:{slide_id}", "slide-id-unique", f"slide id used by {count} slides"))
    slides_by_id = {slide.slide_id: slide for slide in slides}
    for slide in slides:
        found.extend(slide.violations())

    transcripts_by_id = {}
    for transcript in transcripts:
        entity = f"transcript:{transcript.slide_id}"
        if transcript.slide_id not in slides_by_id:
            found.append(Violation(entity, "dangling-slide", f"no slide with id {transcript.slide_id}"))
        if transcript.slide_id in transcripts_by_id:
            found.append(Violation(entity, "transcript-unique", "more than one transcript for this slide"))
        transcripts_by_id[transcript.slide_id] = transcript
        found.extend(transcript.violations())

    if gt is None:
        ground_truths: List[GroundTruth] = []
    elif isinstance(gt, GroundTruth):
        ground_truths = [gt]
    else:
        ground_truths = list(gt)

    for truth in ground_truths:
        entity = f"ground_truth:{truth.slide_id}"
        slide = slides_by_id.get(truth.slide_id)
        if slide is None:
            found.append(Violation(entity, "dangling-slide", f"no slide with id {truth.slide_id}"))
            continue
        region_ids = set(slide.region_ids)
        transcript = transcripts_by_id.get(truth.slide_id)
        line_ids = set(transcript.line_ids) if transcript is not None else None
        for line_id in sorted(truth.lines):
            if line_ids is not None and line_id not in line_ids:
                found.append(Violation(f"{entity}/line:{line_id}", "dangling-line",
                                       f"line {line_id} not in transcript"))
            for region_id in sorted(truth.lines[line_id]):
                if region_id not in region_ids:
                    found.append(Violation(f"{entity}/line:{line_id}", "dangling-region",
                                           f"region {region_id} not on slide {truth.slide_id}"))
    return found
