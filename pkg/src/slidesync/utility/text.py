import unicodedata
from dataclasses import dataclass
from typing import List

from rapidfuzz.distance import Levenshtein

# Characters kept when they sit between two alphanumerics ("state-of-the-art", "don't")
INTRA_WORD_MARKS = {"-", "‐", "‑", "'", "’"}


@dataclass(frozen=True)
class NormalizationOptions:
    lowercase: bool = True
    strip_punctuation: bool = True
    collapse_whitespace: bool = True


DEFAULT_NORMALIZATION = NormalizationOptions()


def _is_strippable(text: str, index: int) -> bool:
    char = text[index]
    category = unicodedata.category(char)
    if category[0] not in ("P", "S"):
        return False
    if char in INTRA_WORD_MARKS and 0 < index < len(text) - 1:
        if text[index - 1].isalnum() and text[index + 1].isalnum():
            return False
    return True


def normalize_text(text: str, options: NormalizationOptions = DEFAULT_NORMALIZATION) -> str:
    """
    Normalize text for matching: Unicode NFC, then optional lowercasing, punctuation and
    symbol stripping (Unicode categories P* and S*, except intra-word hyphens and
    apostrophes) and whitespace collapsing.

    Stripped characters are replaced by a space so "data/model" stays two tokens.
    """
    text = unicodedata.normalize("NFC", text)
    if options.lowercase:
        text = text.lower()
    if options.strip_punctuation:
        text = "".join(" " if _is_strippable(text, i) else c for i, c in enumerate(text))
    if options.collapse_whitespace:
        text = " ".join(text.split())
    return text


def tokenize(text: str) -> List[str]:
    return text.split()


def levenshtein_similarity(a: str, b: str) -> float:
    """1 - editdistance(a, b) / max(|a|, |b|); 1.0 when both are empty."""
    if not a and not b:
        return 1.0
    return 1.0 - Levenshtein.distance(a, b) / max(len(a), len(b))

