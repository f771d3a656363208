from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """A broken model invariant, reported as data rather than raised."""
    entity: str   # e.g. "slide:S1/region:R2"
    rule: str     # short rule identifier, e.g. "bbox-in-unit-square"
    message: str

    def __str__(self) -> str:
        return f"{self.entity}: [{self.rule}] {self.message}"
