import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterable, List, Tuple

from ..classes.alignment import AlignmentResult
from ..classes.transcript import Transcript
from ..classes.violation import Violation
from ..ingest.parsers import load_json_bytes
from ..utility.constants import (DEFAULT_FILL_COLOR, DEFAULT_FILL_OPACITY, DEFAULT_MAGNIFY_SCALE,
                                 DEFAULT_STROKE_COLOR)
from ..utility.files import canonical_json
from ..utility.interval import TimeInterval

logger = logging.getLogger(__name__)


class ScheduleError(Exception):
    pass


class HighlightStyle(Enum):
    BOUNDING_BOX = "bounding_box"
    SHADING = "shading"
    HIDE_BACKGROUND = "hide_background"
    MAGNIFY = "magnify"

    @classmethod
    def from_string(cls, name: str) -> 'HighlightStyle':
        try:
            return cls(name.strip().lower().replace("-", "_"))
        except ValueError:
            raise ValueError(f"Unknown highlight style '{name}'. Known: {', '.join(s.value for s in cls)}")


class GapPolicy(Enum):
    HOLD_PREVIOUS = "hold_previous"
    CLEAR = "clear"

    @classmethod
    def from_string(cls, name: str) -> 'GapPolicy':
        try:
            return cls(name.strip().lower().replace("-", "_"))
        except ValueError:
            raise ValueError(f"Unknown gap policy '{name}'. Known: {', '.join(p.value for p in cls)}")


@dataclass(frozen=True)
class StyleParams:
    stroke_color: str = DEFAULT_STROKE_COLOR
    fill_color: str = DEFAULT_FILL_COLOR
    fill_opacity: float = DEFAULT_FILL_OPACITY
    magnify_scale: float = DEFAULT_MAGNIFY_SCALE

    def __post_init__(self):
        if not 0.0 <= self.fill_opacity <= 1.0:
            raise ValueError(f"fill_opacity {self.fill_opacity} outside [0, 1]")
        if not self.magnify_scale > 1.0:
            raise ValueError(f"magnify_scale must be > 1, got {self.magnify_scale}")

    def to_dict(self) -> Dict[str, Any]:
        return {"stroke_color": self.stroke_color, "fill_color": self.fill_color,
                "fill_opacity": self.fill_opacity, "magnify_scale": self.magnify_scale}

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> 'StyleParams':
        defaults = cls()
        return cls(
            stroke_color=str(raw.get("stroke_color", defaults.stroke_color)),
            fill_color=str(raw.get("fill_color", defaults.fill_color)),
            fill_opacity=float(raw.get("fill_opacity", defaults.fill_opacity)),
            magnify_scale=float(raw.get("magnify_scale", defaults.magnify_scale)),
        )


@dataclass(frozen=True)
class HighlightEvent:
    slide_id: str
    region_ids: Tuple[str, ...]
    t_start: float
    t_end: float
    style: HighlightStyle
    params: StyleParams = field(default_factory=StyleParams)

    def __post_init__(self):
        if not self.region_ids:
            raise ValueError(f"highlight event on slide {self.slide_id} needs at least one region")
        if not self.t_start < self.t_end:
            raise ValueError(f"highlight event t_start {self.t_start} must be < t_end {self.t_end}")

    @property
    def interval(self) -> TimeInterval:
        return TimeInterval(self.t_start, self.t_end)

    @property
    def t_start_ms(self) -> int:
        return int(round(self.t_start * 1000))

    def to_dict(self) -> Dict[str, Any]:
        return {"slide_id": self.slide_id, "region_ids": list(self.region_ids), "t_start": self.t_start,
                "t_end": self.t_end, "style": self.style.value, "params": self.params.to_dict()}


@dataclass(frozen=True)
class HighlightSchedule:
    events: Tuple[HighlightEvent, ...] = ()
    gap_policy: GapPolicy = GapPolicy.CLEAR

    def violations(self) -> List[Violation]:
        found = []
        starts = [event.t_start for event in self.events]
        if starts != sorted(starts):
            found.append(Violation("schedule", "events-sorted", "events must be sorted by t_start"))
        for i, first in enumerate(self.events):
            for second in self.events[i + 1:]:
                if (first.slide_id == second.slide_id and first.interval.overlaps(second.interval)
                        and set(first.region_ids) & set(second.region_ids)):
                    found.append(Violation(f"schedule:{first.slide_id}", "overlap-disjoint-regions",
                                           f"events at {first.t_start} and {second.t_start} overlap on shared regions"))
        return found

    def to_dict(self) -> Dict[str, Any]:
        return {"gap_policy": self.gap_policy.value, "events": [event.to_dict() for event in self.events]}


def _resolve_overlaps(events: List[HighlightEvent]) -> List[HighlightEvent]:
    """Cut an earlier event short where a later one starts on some of the same regions."""
    kept: List[HighlightEvent] = []
    for event in events:
        updated = []
        for previous in kept:
            if previous.t_end > event.t_start and set(previous.region_ids) & set(event.region_ids):
                if previous.t_start >= event.t_start:
                    logger.debug(f"Event at {previous.t_start} on {previous.region_ids} superseded")
                    continue
                previous = replace(previous, t_end=event.t_start)
            updated.append(previous)
        kept = updated + [event]
    return kept


def _hold_previous(events: List[HighlightEvent]) -> List[HighlightEvent]:
    """
    Each event lasts until the next strictly later start. Events sharing a start all
    survive (their regions are disjoint after overlap resolution); the last group keeps
    its own end.
    """
    starts = sorted({event.t_start for event in events})
    next_start = dict(zip(starts, starts[1:]))
    return [replace(event, t_end=next_start[event.t_start]) if event.t_start in next_start else event
            for event in events]


def build_schedule(
    result: AlignmentResult,
    transcript: Transcript,
    style: HighlightStyle,
    params: StyleParams = StyleParams(),
    gap_policy: GapPolicy = GapPolicy.CLEAR,
) -> HighlightSchedule:
    """
    One event per transcript line with predictions, spanning the line's interval.

    Raises:
        ScheduleError: the result is for another slide or names a line the transcript lacks.
    """
    if result.slide_id != transcript.slide_id:
        raise ScheduleError(f"alignment for slide {result.slide_id} paired with transcript of {transcript.slide_id}")
    dangling = sorted(set(result.lines) - set(transcript.line_ids))
    if dangling:
        raise ScheduleError(f"slide {result.slide_id}: alignment lines {dangling} not in transcript")

    events = []
    for line in transcript.lines:
        region_ids = tuple(match.region_id for match in result.lines.get(line.line_id, ()))
        if region_ids:
            events.append(HighlightEvent(result.slide_id, region_ids, line.t_start, line.t_end, style, params))
    events = _resolve_overlaps(events)
    if gap_policy == GapPolicy.HOLD_PREVIOUS:
        events = _hold_previous(events)
    logger.debug(f"Schedule for slide {result.slide_id}: {len(events)} events ({gap_policy.value})")
    return HighlightSchedule(tuple(events), gap_policy)


def merge_schedules(schedules: Iterable[HighlightSchedule], gap_policy: GapPolicy) -> HighlightSchedule:
    """Combine per-slide schedules; events keep input order among equal start times."""
    events = [event for schedule in schedules for event in schedule.events]
    events.sort(key=lambda event: event.t_start)
    return HighlightSchedule(tuple(events), gap_policy)


def write_schedule(schedule: HighlightSchedule) -> bytes:
    return canonical_json(schedule.to_dict())


def parse_schedule(data: bytes) -> HighlightSchedule:
    """
    Raises:
        ParseError: malformed JSON.
        ScheduleError: well-formed JSON that is not a valid schedule.
    """
    raw = load_json_bytes(data)
    try:
        events = tuple(
            HighlightEvent(
                slide_id=str(item["slide_id"]),
                region_ids=tuple(str(rid) for rid in item["region_ids"]),
                t_start=float(item["t_start"]),
                t_end=float(item["t_end"]),
                style=HighlightStyle.from_string(item["style"]),
                params=StyleParams.from_dict(item.get("params", {})),
            )
            for item in raw["events"]
        )
        schedule = HighlightSchedule(events, GapPolicy.from_string(raw.get("gap_policy", GapPolicy.CLEAR.value)))
    except (KeyError, TypeError, ValueError, AttributeError, OverflowError) as e:
        raise ScheduleError(f"invalid schedule: {e}") from e
    violations = schedule.violations()
    if violations:
        raise ScheduleError("; ".join(str(v) for v in violations))
    return schedule
