import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import List, Optional, Tuple

from ..classes.alignment import Diagnostic
from ..classes.slide import SlideDocument
from ..classes.transcript import TimedWord, Transcript, TranscriptLine
from ..providers.llm import LlmProvider
from ..providers.transport import ProviderError
from ..utility.constants import CORRECTION_PROMPT, DEFAULT_MAX_IN_FLIGHT

logger = logging.getLogger(__name__)


def render_correction_prompt(line_text: str, slide: SlideDocument) -> str:
    return CORRECTION_PROMPT.format(slide_text=slide.textual_text(), line=" ".join(line_text.split()))


def clean_reply(reply: str) -> str:
    text = reply.strip()
    if len(text) >= 2 and text[0] == text[-1] == '"':
        text = text[1:-1].strip()
    return " ".join(text.split())


def apply_reply(line: TranscriptLine, text: str) -> TranscriptLine:
    """New text for a line; word timings survive only when the token count is unchanged."""
    if text == line.text:
        return line
    words = line.words
    if words is not None:
        tokens = text.split()
        if len(tokens) == len(words):
            words = tuple(TimedWord(token, word.t_start, word.t_end) for token, word in zip(tokens, words))
        else:
            words = None
    return replace(line, text=text, words=words)


def _correct_line(line: TranscriptLine, slide: SlideDocument, provider: LlmProvider
                  ) -> Tuple[TranscriptLine, Optional[Diagnostic]]:
    if not line.text.strip():
        return line, None
    try:
        reply = clean_reply(provider.complete(render_correction_prompt(line.text, slide)))
    except ProviderError as e:
        logger.warning(f"Correction failed for slide {slide.slide_id} line {line.line_id}: {e}")
        return line, Diagnostic(slide.slide_id, line.line_id, None, "correction_error", str(e))
    if not reply:
        return line, Diagnostic(slide.slide_id, line.line_id, None, "correction_error", "empty reply")
    return apply_reply(line, reply), None


def correct_llm(transcript: Transcript, slide: SlideDocument, provider: LlmProvider,
                max_in_flight: int = DEFAULT_MAX_IN_FLIGHT) -> Tuple[Transcript, List[Diagnostic]]:
    """
    Rewrite every line with the model, giving it the line and the slide text. Lines are
    corrected concurrently; a failing line keeps its original text and yields a
    diagnostic. Line ids and timestamps are preserved.
    """
    with ThreadPoolExecutor(max_workers=max(1, max_in_flight)) as executor:
        outcomes = list(executor.map(lambda line: _correct_line(line, slide, provider), transcript.lines))
    lines = tuple(line for line, _ in outcomes)
    diagnostics = [diagnostic for _, diagnostic in outcomes if diagnostic is not None]
    changed = sum(1 for old, new in zip(transcript.lines, lines) if old.text != new.text)
    logger.info(f"LLM correction of slide {slide.slide_id}: {changed}/{len(lines)} lines changed, "
                f"{len(diagnostics)} failures")
    return replace(transcript, lines=lines), diagnostics
