from dataclasses import dataclass

from ..utility.constants import THRESHOLD_PRESETS


@dataclass(frozen=True)
class ThresholdPolicy:
    """Per-kind score cutoffs turning a score matrix into predictions."""
    textual_threshold: float
    visual_threshold: float
    name: str = "custom"

    def __post_init__(self):
        for label, value in (("textual", self.textual_threshold), ("visual", self.visual_threshold)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{label} threshold {value} outside [0, 1]")

    @classmethod
    def from_preset(cls, name: str) -> 'ThresholdPolicy':
        if name not in THRESHOLD_PRESETS:
            raise ValueError(f"Unknown threshold preset '{name}'. Known: {', '.join(THRESHOLD_PRESETS)}")
        textual, visual = THRESHOLD_PRESETS[name]
        return cls(textual, visual, name)

    def threshold_for(self, is_textual: bool) -> float:
        return self.textual_threshold if is_textual else self.visual_threshold

    def __str__(self) -> str:
        return f"{self.name} (textual: {self.textual_threshold}, visual: {self.visual_threshold})"
