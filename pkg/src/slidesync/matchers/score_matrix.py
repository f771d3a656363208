from dataclasses import dataclass
from typing import Dict, List, Sequence, Set, Tuple

import numpy as np

from ..classes.policy import ThresholdPolicy


@dataclass(frozen=True)
class ScoreMatrix:
    """Scores for every (line, region) pair of one slide; rows are lines, columns regions."""
    line_ids: Tuple[str, ...]
    region_ids: Tuple[str, ...]
    scores: np.ndarray

    def __post_init__(self):
        if self.scores.shape != (len(self.line_ids), len(self.region_ids)):
            raise ValueError(f"score shape {self.scores.shape} does not match "
                             f"{len(self.line_ids)} lines x {len(self.region_ids)} regions")
        if self.scores.size and (np.nanmin(self.scores) < 0.0 or np.nanmax(self.scores) > 1.0):
            raise ValueError("scores must lie within [0, 1]")

    def get(self, line_id: str, region_id: str) -> float:
        return float(self.scores[self.line_ids.index(line_id), self.region_ids.index(region_id)])

    def row(self, line_id: str) -> Dict[str, float]:
        values = self.scores[self.line_ids.index(line_id)]
        return {region_id: float(value) for region_id, value in zip(self.region_ids, values)}

    def threshold_vector(self, policy: ThresholdPolicy, textual: Sequence[bool]) -> np.ndarray:
        return np.array([policy.threshold_for(is_textual) for is_textual in textual], dtype=np.float64)

    def apply_policy(self, policy: ThresholdPolicy, textual: Sequence[bool]) -> Dict[str, List[Tuple[str, float]]]:
        """
        Region r is predicted for line t iff score(t, r) reaches the threshold of r's kind.

        :param textual: per region column, whether the region is textual
        :return: line_id -> [(region_id, score)] in region order
        """
        predicted = self.scores >= self.threshold_vector(policy, textual)[np.newaxis, :]
        return self._collect(predicted)

    def decisions(self) -> Dict[str, List[Tuple[str, float]]]:
        """Categorical predictions: pairs scored 1."""
        return self._collect(self.scores >= 1.0)

    def predicted_sets(self, policy: ThresholdPolicy, textual: Sequence[bool]) -> Dict[str, Set[str]]:
        return {line_id: {rid for rid, _ in matches} for line_id, matches in self.apply_policy(policy, textual).items()}

    def _collect(self, mask: np.ndarray) -> Dict[str, List[Tuple[str, float]]]:
        result = {}
        for row, line_id in enumerate(self.line_ids):
            result[line_id] = [(self.region_ids[col], float(self.scores[row, col])) for col in np.flatnonzero(mask[row])]
        return result
