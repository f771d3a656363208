from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .violation import Violation


@dataclass(frozen=True)
class Diagnostic:
    """A recoverable per-item problem (a bad LLM reply, a failed provider call, ...)."""
    slide_id: str
    line_id: Optional[str]
    region_id: Optional[str]
    kind: str
    message: str

    def to_dict(self) -> Dict[str, Optional[str]]:
        return {
            "slide_id": self.slide_id,
            "line_id": self.line_id,
            "region_id": self.region_id,
            "kind": self.kind,
            "message": self.message,
        }


@dataclass(frozen=True)
class RegionMatch:
    region_id: str
    score: float
    matcher_tag: str


@dataclass(frozen=True)
class AlignmentResult:
    """
    Predicted regions per transcript line for one slide.

    diagnostics travel with the result but do not take part in equality and are not
    part of the Alignment JSON.
    """
    slide_id: str
    matcher: str
    lines: Dict[str, Tuple[RegionMatch, ...]] = field(default_factory=dict)
    diagnostics: Tuple[Diagnostic, ...] = field(default=(), compare=False)

    def predicted(self, line_id: str) -> Set[str]:
        return {match.region_id for match in self.lines.get(line_id, ())}

    def violations(self, region_ids: Optional[Set[str]] = None) -> List[Violation]:
        found = []
        for line_id, matches in sorted(self.lines.items()):
            entity = f"alignment:{self.slide_id}/line:{line_id}"
            seen = set()
            for match in matches:
                if match.region_id in seen:
                    found.append(Violation(entity, "region-id-unique", f"region {match.region_id} predicted twice"))
                seen.add(match.region_id)
                if region_ids is not None and match.region_id not in region_ids:
                    found.append(Violation(entity, "region-exists", f"region {match.region_id} not on slide"))
                if not 0.0 <= match.score <= 1.0:
                    found.append(Violation(entity, "score-range", f"score {match.score} for {match.region_id} outside [0, 1]"))
        return found


@dataclass(frozen=True)
class GroundTruth:
    slide_id: str
    lines: Dict[str, FrozenSet[str]] = field(default_factory=dict)

    def expected(self, line_id: str) -> FrozenSet[str]:
        return self.lines.get(line_id, frozenset())
