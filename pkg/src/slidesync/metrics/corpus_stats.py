import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Union

import numpy as np
import pandas as pd

from ..ingest.manifest import DatasetEntry, DatasetHelper, DatasetManifest
from ..utility.constants import SCORE_DECIMALS
from ..utility.text import normalize_text, tokenize

logger = logging.getLogger(__name__)

QUANTITIES = ["duration", "ocr_words", "asr_words"]
HISTOGRAM_BUCKET_SECONDS = 10


def slide_rows(entries: Iterable[DatasetEntry]) -> pd.DataFrame:
    """One row per slide: segment duration in seconds, OCR word count, ASR word count."""
    rows = []
    for entry in entries:
        rows.append({
            "slide_id": entry.slide_id,
            "duration": entry.transcript.duration,
            "ocr_words": sum(len(region.text.split()) for region in entry.slide.regions),
            "asr_words": sum(len(line.text.split()) for line in entry.transcript.lines),
        })
    return pd.DataFrame(rows, columns=["slide_id"] + QUANTITIES)


def unique_alpha_words(texts: Iterable[str]) -> int:
    vocabulary = set()
    for text in texts:
        vocabulary.update(token for token in tokenize(normalize_text(text)) if token.isalpha())
    return len(vocabulary)


def duration_histogram(durations: pd.Series) -> List[Dict[str, Any]]:
    """Slides per 10-second duration bucket, from 0 up to the bucket of the longest segment."""
    if durations.empty:
        return []
    buckets = (durations // HISTOGRAM_BUCKET_SECONDS).astype(int)
    counts = buckets.value_counts()
    return [{"bucket": f"{b * HISTOGRAM_BUCKET_SECONDS}-{(b + 1) * HISTOGRAM_BUCKET_SECONDS}",
             "slides": int(counts.get(b, 0))}
            for b in range(int(buckets.max()) + 1)]


@dataclass(frozen=True)
class CorpusStats:
    table: pd.DataFrame
    slides: int
    unique_ocr_words: int
    unique_asr_words: int
    histogram: List[Dict[str, Any]]

    def to_dict(self) -> Dict[str, Any]:
        summary = {}
        for quantity in QUANTITIES:
            summary[quantity] = {stat: (None if pd.isna(value) else round(float(value), SCORE_DECIMALS))
                                 for stat, value in self.table.loc[quantity].items()}
        return {
            "slides": self.slides,
            **summary,
            "unique_words": {"ocr": self.unique_ocr_words, "asr": self.unique_asr_words},
            "duration_histogram": self.histogram,
        }

    def to_text(self) -> str:
        """Aligned plain-text table of min/max/mean/median per quantity."""
        labels = {"duration": "Segment duration (s)", "ocr_words": "OCR words", "asr_words": "ASR words"}
        table = self.table.rename(index=labels)
        lines = [table.to_string(float_format=lambda v: f"{v:.2f}"), "",
                 f"Slides: {self.slides}",
                 f"Unique words: OCR {self.unique_ocr_words}, ASR {self.unique_asr_words}"]
        return "\n".join(lines) + "\n"


def corpus_stats(dataset: Union[DatasetManifest, Iterable[DatasetEntry]], jobs: int = 1) -> CorpusStats:
    """
    Min, max, mean and median of segment duration, OCR word count and ASR word count
    over the slides of a dataset (a manifest, or entries already loaded).
    """
    if isinstance(dataset, DatasetManifest):
        entries = DatasetHelper(dataset, jobs=jobs).get_all_entries()
    else:
        entries = list(dataset)
    rows = slide_rows(entries)
    if rows.empty:
        table = pd.DataFrame(np.nan, index=QUANTITIES, columns=["min", "max", "mean", "median"])
    else:
        table = rows[QUANTITIES].astype(float).agg(["min", "max", "mean", "median"]).T
    logger.info(f"Corpus statistics over {len(rows)} slides")
    return CorpusStats(
        table=table,
        slides=len(rows),
        unique_ocr_words=unique_alpha_words(region.text for entry in entries for region in entry.slide.regions),
        unique_asr_words=unique_alpha_words(line.text for entry in entries for line in entry.transcript.lines),
        histogram=duration_histogram(rows["duration"]),
    )
