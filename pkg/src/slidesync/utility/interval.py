from dataclasses import dataclass


@dataclass(frozen=True)
class TimeInterval:
    start: float
    end: float

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"start {self.start} cannot be greater than end {self.end}")

    def overlaps(self, other: 'TimeInterval') -> bool:
        return self.start < other.end and other.start < self.end

    def within(self, other: 'TimeInterval', tolerance: float = 0.0) -> bool:
        return other.start - tolerance <= self.start and self.end <= other.end + tolerance

    def __str__(self) -> str:
        return f"{self.start:.3f}-{self.end:.3f}"
