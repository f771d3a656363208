import logging
from collections import Counter
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Tuple

from rapidfuzz import process
from rapidfuzz.distance import Levenshtein

from ..classes.slide import SlideDocument
from ..classes.transcript import TimedWord, Transcript, TranscriptLine
from ..utility.constants import LEXICON_SIMILARITY_GATE, MIN_LEXICON_TOKEN_LENGTH, SCORE_DECIMALS
from ..utility.text import DEFAULT_NORMALIZATION, NormalizationOptions, normalize_text, tokenize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Substitution:
    source: str
    target: str
    similarity: float

    def to_dict(self) -> Dict[str, Any]:
        return {"from": self.source, "to": self.target, "similarity": round(self.similarity, SCORE_DECIMALS)}


@dataclass(frozen=True)
class SubstitutionLog:
    line_id: str
    subs: Tuple[Substitution, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {"line_id": self.line_id, "subs": [sub.to_dict() for sub in self.subs]}


def build_slide_lexicon(slide: SlideDocument, options: NormalizationOptions = DEFAULT_NORMALIZATION) -> Counter:
    """Normalized tokens of all textual regions with their counts; tokens shorter than 3 are left out."""
    lexicon = Counter()
    for region in slide.regions:
        if not region.is_textual:
            continue
        lexicon.update(token for token in tokenize(normalize_text(region.text, options))
                       if len(token) >= MIN_LEXICON_TOKEN_LENGTH)
    return lexicon


def _split_edges(token: str) -> Tuple[str, str, str]:
    start = 0
    while start < len(token) and not token[start].isalnum():
        start += 1
    end = len(token)
    while end > start and not token[end - 1].isalnum():
        end -= 1
    return token[:start], token[start:end], token[end:]


def restore_case(new_word: str, original_word: str) -> str:
    if len(original_word) > 1 and original_word.isupper():
        return new_word.upper()
    if original_word[:1].isupper():
        return new_word[:1].upper() + new_word[1:]
    return new_word


def nearest_lexicon_token(token: str, lexicon: Counter) -> Optional[Tuple[str, float]]:
    """
    The lexicon token most similar to token, when its similarity reaches the gate and no
    other lexicon token is equally similar.
    """
    candidates = process.extract(token, sorted(lexicon), scorer=Levenshtein.normalized_similarity,
                                 score_cutoff=LEXICON_SIMILARITY_GATE, limit=None)
    if not candidates:
        return None
    best = max(score for _, score, _ in candidates)
    winners = [choice for choice, score, _ in candidates if score == best]
    if len(winners) != 1:
        logger.debug(f"Tie for '{token}' between {winners} at {best:.3f}; kept")
        return None
    return winners[0], best


def correct_token(token: str, lexicon: Counter, options: NormalizationOptions = DEFAULT_NORMALIZATION
                  ) -> Tuple[str, Optional[Substitution]]:
    prefix, core, suffix = _split_edges(token)
    normalized = normalize_text(core, options)
    if not normalized or " " in normalized or normalized in lexicon:
        return token, None
    nearest = nearest_lexicon_token(normalized, lexicon)
    if nearest is None:
        return token, None
    target, similarity = nearest
    replacement = restore_case(target, core)
    return f"{prefix}{replacement}{suffix}", Substitution(core, replacement, similarity)


def correct_lexical(line: TranscriptLine, lexicon: Counter,
                    options: NormalizationOptions = DEFAULT_NORMALIZATION) -> Tuple[TranscriptLine, SubstitutionLog]:
    """
    Replace each out-of-lexicon token by its unique nearest lexicon token when the
    similarity is at least 0.75. Surrounding punctuation and capitalization are kept;
    timestamps never change. Word timings follow the text when the word count matches.
    """
    tokens = line.text.split()
    corrected: List[str] = []
    subs: List[Substitution] = []
    for token in tokens:
        new_token, sub = correct_token(token, lexicon, options)
        corrected.append(new_token)
        if sub is not None:
            subs.append(sub)
    if not subs:
        return line, SubstitutionLog(line.line_id)

    words = line.words
    if words is not None and len(words) == len(tokens):
        words = tuple(TimedWord(new, word.t_start, word.t_end) if new != old else word
                      for word, old, new in zip(words, tokens, corrected))
    for sub in subs:
        logger.debug(f"Line {line.line_id}: '{sub.source}' -> '{sub.target}' ({sub.similarity:.3f})")
    return replace(line, text=" ".join(corrected), words=words), SubstitutionLog(line.line_id, tuple(subs))


def correct_transcript_lexical(transcript: Transcript, slide: SlideDocument,
                               options: NormalizationOptions = DEFAULT_NORMALIZATION
                               ) -> Tuple[Transcript, List[SubstitutionLog]]:
    lexicon = build_slide_lexicon(slide, options)
    lines = []
    logs = []
    for line in transcript.lines:
        corrected, log = correct_lexical(line, lexicon, options)
        lines.append(corrected)
        logs.append(log)
    changed = sum(1 for log in logs if log.subs)
    logger.info(f"Lexicon correction of slide {slide.slide_id}: {changed}/{len(lines)} lines changed")
    return replace(transcript, lines=tuple(lines)), logs
