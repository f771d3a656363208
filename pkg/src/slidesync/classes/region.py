import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from .violation import Violation
from ..utility.geometry import within_unit_square


class RegionKind(Enum):
    TEXTUAL = "textual"
    VISUAL = "visual"


@dataclass(frozen=True)
class Region:
    """
    One layout element of a slide: a text block, figure or table.

    bbox is (x, y, width, height) in normalized slide coordinates, origin top-left.
    Visual regions may carry empty text.
    """
    id: str
    kind: RegionKind
    bbox: Tuple[float, float, float, float]
    text: str = ""
    confidence: Optional[float] = None

    @property
    def is_textual(self) -> bool:
        return self.kind == RegionKind.TEXTUAL

    def violations(self, slide_id: str = "?") -> List[Violation]:
        entity = f"slide:{slide_id}/region:{self.id}"
        found = []
        x, y, width, height = self.bbox
        if not all(math.isfinite(v) for v in self.bbox):
            found.append(Violation(entity, "bbox-finite", f"bbox {self.bbox} has non-finite values"))
            return found
        if width <= 0 or height <= 0:
            found.append(Violation(entity, "bbox-positive-size", f"bbox width/height must be > 0, got {width}x{height}"))
        if not within_unit_square(self.bbox):
            found.append(Violation(entity, "bbox-in-unit-square",
                                   f"bbox {self.bbox} must satisfy 0 <= x, y, x+width, y+height <= 1"))
        if self.kind == RegionKind.TEXTUAL and not self.text.strip():
            found.append(Violation(entity, "textual-has-text", "textual region must have non-empty text"))
        if self.confidence is not None and not 0.0 <= self.confidence <= 1.0:
            found.append(Violation(entity, "confidence-range", f"confidence {self.confidence} outside [0, 1]"))
        return found
