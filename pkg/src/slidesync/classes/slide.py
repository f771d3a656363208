from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .region import Region
from .violation import Violation


@dataclass(frozen=True)
class SlideDocument:
    slide_id: str
    image_path: str
    image_size: Tuple[int, int]
    regions: Tuple[Region, ...] = ()

    @property
    def region_index(self) -> Dict[str, Region]:
        return {region.id: region for region in self.regions}

    @property
    def region_ids(self) -> List[str]:
        return [region.id for region in self.regions]

    def textual_text(self) -> str:
        """Concatenated text of the textual regions, one region per line."""
        return "\n".join(region.text for region in self.regions if region.is_textual)

    def violations(self) -> List[Violation]:
        entity = f"slide:{self.slide_id}"
        found = []
        width, height = self.image_size
        if not (isinstance(width, int) and isinstance(height, int)) or width <= 0 or height <= 0:
            found.append(Violation(entity, "image-size-positive", f"image_size {self.image_size} must be positive integers"))
        duplicates = sorted(rid for rid, count in Counter(self.region_ids).items() if count > 1)
        for rid in duplicates:
            found.append(Violation(f"{entity}/region:{rid}", "region-id-unique", "region id appears more than once"))
        for region in self.regions:
            found.extend(region.violations(self.slide_id))
        return found
