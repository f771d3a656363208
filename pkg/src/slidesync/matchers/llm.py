"""
LLM-based region decisions: a yes/no question per (line, region) pair, or one request
per line asking the model to pick the relevant region ids.
"""
import logging
import re
from dataclasses import dataclass
from typing import FrozenSet, Sequence, Tuple

from .config import MatcherError
from ..classes.region import Region
from ..providers.llm import LlmProvider
from ..utility.constants import SELECT_PROMPT, YES_NO_PROMPT

logger = logging.getLogger(__name__)

_SEPARATORS = re.compile(r"[,\n]")
_EDGE_MARKS = "[]()\"'`.;:*"


class DecisionError(MatcherError):
    """The model's reply to a yes/no prompt was neither yes nor no."""


def _one_line(text: str) -> str:
    return " ".join(text.split())


def render_yes_no_prompt(line_text: str, region: Region) -> str:
    return YES_NO_PROMPT.format(line=_one_line(line_text), region_text=_one_line(region.text))


def render_select_prompt(line_text: str, regions: Sequence[Region]) -> str:
    listing = "\n".join(f"[{region.id}] {_one_line(region.text)}" for region in regions)
    return SELECT_PROMPT.format(line=_one_line(line_text), regions=listing)


def parse_yes_no(reply: str) -> bool:
    tokens = reply.split()
    first = tokens[0].strip(_EDGE_MARKS + "!?,").lower() if tokens else ""
    if first == "yes":
        return True
    if first == "no":
        return False
    raise DecisionError(f"expected Yes or No, got {reply[:60]!r}")


def llm_yes_no_decide(line_text: str, region: Region, provider: LlmProvider) -> bool:
    """
    Ask whether region is relevant to the line. The first word of the reply decides,
    case-insensitively.

    Raises:
        DecisionError: the reply starts with neither yes nor no.
        ProviderError: the provider call failed.
    """
    return parse_yes_no(provider.complete(render_yes_no_prompt(line_text, region)))


@dataclass(frozen=True)
class Selection:
    region_ids: FrozenSet[str]
    dropped_ids: Tuple[str, ...] = ()
    unparseable: bool = False


def parse_selection(reply: str, known_ids: Sequence[str]) -> Selection:
    """
    Read a comma/newline separated id list. An empty reply or 'none' selects nothing;
    ids not on the slide are dropped; an item with inner whitespace makes the whole
    reply unparseable.
    """
    text = reply.strip()
    if not text or text.strip(_EDGE_MARKS).lower() == "none":
        return Selection(frozenset())
    items = [item.strip().strip(_EDGE_MARKS).strip() for item in _SEPARATORS.split(text)]
    items = [item for item in items if item]
    if any(len(item.split()) > 1 for item in items):
        return Selection(frozenset(), unparseable=True)
    known = set(known_ids)
    selected = []
    dropped = []
    for item in items:
        if item in known:
            selected.append(item)
        elif item not in dropped:
            dropped.append(item)
    return Selection(frozenset(selected), tuple(dropped))


def llm_select(line_text: str, regions: Sequence[Region], provider: LlmProvider) -> Selection:
    """Ask the model to pick the relevant regions for a line from the full region list."""
    if not regions:
        raise ValueError("llm_select needs at least one region")
    reply = provider.complete(render_select_prompt(line_text, regions))
    selection = parse_selection(reply, [region.id for region in regions])
    if selection.dropped_ids:
        logger.warning(f"Dropped unknown region ids {list(selection.dropped_ids)} from reply {reply[:60]!r}")
    if selection.unparseable:
        logger.warning(f"Unparseable selection reply {reply[:60]!r}")
    return selection
