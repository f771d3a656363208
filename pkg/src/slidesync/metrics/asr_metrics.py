import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Tuple

import numpy as np
from rapidfuzz.distance import Levenshtein

from ..classes.transcript import Transcript
from ..utility.constants import SCORE_DECIMALS
from ..utility.text import DEFAULT_NORMALIZATION, NormalizationOptions, normalize_text, tokenize

logger = logging.getLogger(__name__)


def _empty_reference_rate(hyp) -> float:
    return 0.0 if not hyp else 1.0


def cer(ref: str, hyp: str) -> float:
    """Character edit distance over the reference length; 0/1 for an empty reference."""
    if not ref:
        return _empty_reference_rate(hyp)
    return Levenshtein.distance(ref, hyp) / len(ref)


def wer(ref: str, hyp: str) -> float:
    """Word edit distance over whitespace tokens, divided by the reference word count."""
    ref_words, hyp_words = ref.split(), hyp.split()
    if not ref_words:
        return _empty_reference_rate(hyp_words)
    return Levenshtein.distance(ref_words, hyp_words) / len(ref_words)


def edit_distance(ref: str, hyp: str) -> int:
    """Raw word-level edit distance."""
    return Levenshtein.distance(ref.split(), hyp.split())


def transcription_prf(ref: str, hyp: str, options: NormalizationOptions = DEFAULT_NORMALIZATION
                      ) -> Tuple[float, float, float]:
    """Bag-of-words precision, recall and F1 on normalized tokens, using multiset intersection."""
    ref_bag = Counter(tokenize(normalize_text(ref, options)))
    hyp_bag = Counter(tokenize(normalize_text(hyp, options)))
    if not ref_bag and not hyp_bag:
        return 1.0, 1.0, 1.0
    if not ref_bag or not hyp_bag:
        return 0.0, 0.0, 0.0
    common = sum((ref_bag & hyp_bag).values())
    precision = common / sum(hyp_bag.values())
    recall = common / sum(ref_bag.values())
    if precision + recall == 0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class AsrSampleScores:
    cer: float
    wer: float
    edit_distance: int
    p: float
    r: float
    f1: float

    @classmethod
    def compare(cls, ref: str, hyp: str, options: NormalizationOptions = DEFAULT_NORMALIZATION) -> 'AsrSampleScores':
        return cls(cer(ref, hyp), wer(ref, hyp), edit_distance(ref, hyp), *transcription_prf(ref, hyp, options))

    def to_dict(self) -> Dict[str, Any]:
        return {"cer": round(self.cer, SCORE_DECIMALS), "wer": round(self.wer, SCORE_DECIMALS),
                "edit_distance": self.edit_distance, "p": round(self.p, SCORE_DECIMALS),
                "r": round(self.r, SCORE_DECIMALS), "f1": round(self.f1, SCORE_DECIMALS)}


@dataclass(frozen=True)
class AsrScores:
    per_sample: Dict[str, AsrSampleScores] = field(default_factory=dict)

    @property
    def averages(self) -> Dict[str, float]:
        """Means over samples; edit_distance is the per-sample average."""
        keys = ("cer", "wer", "edit_distance", "p", "r", "f1")
        if not self.per_sample:
            return {key: 0.0 for key in keys}
        table = np.array([[getattr(s, key) for key in keys] for s in self.per_sample.values()], dtype=np.float64)
        return {key: round(float(value), SCORE_DECIMALS) for key, value in zip(keys, table.mean(axis=0))}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "per_sample": {key: scores.to_dict() for key, scores in self.per_sample.items()},
            "avg": self.averages,
            "count": len(self.per_sample),
        }


def evaluate_transcripts(pairs: Iterable[Tuple[Transcript, Transcript]],
                         options: NormalizationOptions = DEFAULT_NORMALIZATION) -> AsrScores:
    """
    Compare reference and hypothesis transcripts line by line (matched on line_id); each
    reference line is one sample keyed 'slide_id/line_id'. A reference line absent from
    the hypothesis is compared against empty text.
    """
    per_sample = {}
    for ref, hyp in pairs:
        hyp_lines = {line.line_id: line.text for line in hyp.lines}
        extra = sorted(set(hyp_lines) - set(ref.line_ids))
        if extra:
            logger.warning(f"Slide {ref.slide_id}: hypothesis lines {extra} have no reference and are not scored")
        for line in ref.lines:
            per_sample[f"{ref.slide_id}/{line.line_id}"] = AsrSampleScores.compare(
                line.text, hyp_lines.get(line.line_id, ""), options)
    return AsrScores(per_sample)
