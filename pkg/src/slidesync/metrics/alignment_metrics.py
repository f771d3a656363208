"""
Alignment quality per transcript line: correctness (S_c), missing (S_m), precision,
recall and F1, plus unweighted averages over lines.
"""
import logging
from dataclasses import dataclass, field
from typing import AbstractSet, Any, Dict, Iterable, Tuple

import numpy as np

from ..classes.alignment import AlignmentResult, GroundTruth
from ..utility.constants import SCORE_DECIMALS

logger = logging.getLogger(__name__)


def correctness_score(pred: AbstractSet[str], gt: AbstractSet[str]) -> float:
    """Share of predicted regions that are expected; 1 when nothing is predicted."""
    if not pred:
        return 1.0
    return len(pred & gt) / len(pred)


def missing_score(pred: AbstractSet[str], gt: AbstractSet[str]) -> float:
    """Share of expected regions that were not predicted; 0 when nothing is expected."""
    if not gt:
        return 0.0
    return len(gt - pred) / len(gt)


def precision_recall_f1(pred: AbstractSet[str], gt: AbstractSet[str]) -> Tuple[float, float, float]:
    precision = len(pred & gt) / len(pred) if pred else 0.0
    recall = 1.0 - missing_score(pred, gt)
    if precision + recall == 0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class LineScores:
    sc: float
    sm: float
    p: float
    r: float
    f1: float

    @property
    def incorrectness(self) -> float:
        return 1.0 - self.sc

    @classmethod
    def from_sets(cls, pred: AbstractSet[str], gt: AbstractSet[str]) -> 'LineScores':
        p, r, f1 = precision_recall_f1(pred, gt)
        return cls(correctness_score(pred, gt), missing_score(pred, gt), p, r, f1)

    def to_dict(self) -> Dict[str, float]:
        values = {"sc": self.sc, "sm": self.sm, "p": self.p, "r": self.r, "f1": self.f1,
                  "incorrectness": self.incorrectness}
        return {key: round(value, SCORE_DECIMALS) for key, value in values.items()}


@dataclass(frozen=True)
class AlignmentScores:
    per_line: Dict[str, LineScores] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.per_line)

    @property
    def averages(self) -> LineScores:
        """Unweighted means over lines; all zero when there are no lines."""
        if not self.per_line:
            return LineScores(0.0, 0.0, 0.0, 0.0, 0.0)
        table = np.array([[s.sc, s.sm, s.p, s.r, s.f1] for s in self.per_line.values()])
        return LineScores(*(float(v) for v in table.mean(axis=0)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "per_line": {line_id: scores.to_dict() for line_id, scores in self.per_line.items()},
            "avg": self.averages.to_dict(),
            "count": self.count,
        }


def _score_lines(result: AlignmentResult, gt: GroundTruth, key_prefix: str = "") -> Dict[str, LineScores]:
    if result.slide_id != gt.slide_id:
        raise ValueError(f"alignment for slide {result.slide_id} evaluated against ground truth of {gt.slide_id}")
    extra = sorted(set(result.lines) - set(gt.lines))
    if extra:
        logger.warning(f"Slide {gt.slide_id}: lines {extra} have no ground truth and are not scored")
    return {f"{key_prefix}{line_id}": LineScores.from_sets(result.predicted(line_id), expected)
            for line_id, expected in gt.lines.items()}


def evaluate_alignment(result: AlignmentResult, gt: GroundTruth) -> AlignmentScores:
    """
    Score every ground-truth line of one slide. A line missing from the result counts as
    an empty prediction.
    """
    return AlignmentScores(_score_lines(result, gt))


def evaluate_dataset(pairs: Iterable[Tuple[AlignmentResult, GroundTruth]]) -> AlignmentScores:
    """Pool the lines of many slides, keyed 'slide_id/line_id'; averages run over all pooled lines."""
    per_line: Dict[str, LineScores] = {}
    for result, gt in pairs:
        per_line.update(_score_lines(result, gt, f"{gt.slide_id}/"))
    return AlignmentScores(per_line)
