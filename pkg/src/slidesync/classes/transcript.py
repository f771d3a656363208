from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .violation import Violation
from ..utility.constants import WORD_TIMING_TOLERANCE
from ..utility.interval import TimeInterval


@dataclass(frozen=True)
class TimedWord:
    word: str
    t_start: float
    t_end: float


@dataclass(frozen=True)
class TranscriptLine:
    line_id: str
    text: str
    t_start: float
    t_end: float
    words: Optional[Tuple[TimedWord, ...]] = None

    @property
    def interval(self) -> TimeInterval:
        return TimeInterval(self.t_start, self.t_end)

    def violations(self, slide_id: str = "?") -> List[Violation]:
        entity = f"transcript:{slide_id}/line:{self.line_id}"
        found = []
        if self.t_start < 0:
            found.append(Violation(entity, "t-start-non-negative", f"t_start {self.t_start} < 0"))
        if not self.t_start < self.t_end:
            found.append(Violation(entity, "t-start-before-t-end",
                                   f"t_start {self.t_start} must be < t_end {self.t_end}"))
            return found
        if self.words:
            previous_start = None
            for index, word in enumerate(self.words):
                if previous_start is not None and word.t_start < previous_start:
                    found.append(Violation(entity, "word-order", f"word {index} '{word.word}' starts before its predecessor"))
                previous_start = word.t_start
                if word.t_end < word.t_start:
                    found.append(Violation(entity, "word-interval", f"word {index} '{word.word}' ends before it starts"))
                elif not TimeInterval(word.t_start, word.t_end).within(self.interval, WORD_TIMING_TOLERANCE):
                    found.append(Violation(entity, "word-within-line",
                                           f"word {index} '{word.word}' [{word.t_start}, {word.t_end}] outside line interval"))
        return found


@dataclass(frozen=True)
class Transcript:
    slide_id: str
    lines: Tuple[TranscriptLine, ...] = ()

    def get_line(self, line_id: str) -> Optional[TranscriptLine]:
        for line in self.lines:
            if line.line_id == line_id:
                return line
        return None

    @property
    def line_ids(self) -> List[str]:
        return [line.line_id for line in self.lines]

    @property
    def text(self) -> str:
        return " ".join(line.text for line in self.lines)

    @property
    def duration(self) -> float:
        """Segment duration: last line end minus first line start, 0 when empty."""
        if not self.lines:
            return 0.0
        return self.lines[-1].t_end - self.lines[0].t_start

    def violations(self) -> List[Violation]:
        entity = f"transcript:{self.slide_id}"
        found = []
        starts = [line.t_start for line in self.lines]
        if starts != sorted(starts):
            found.append(Violation(entity, "lines-sorted", "lines must be sorted by t_start"))
        for line_id, count in sorted(Counter(self.line_ids).items()):
            if count > 1:
                found.append(Violation(f"{entity}/line:{line_id}", "line-id-unique", "line id appears more than once"))
        for line in self.lines:
            found.extend(line.violations(self.slide_id))
        return found
