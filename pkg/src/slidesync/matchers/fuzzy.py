import logging
from typing import List

import numpy as np
from rapidfuzz import process
from rapidfuzz.distance import Levenshtein

from .score_matrix import ScoreMatrix
from ..classes.slide import SlideDocument
from ..classes.transcript import Transcript
from ..utility.constants import FUZZY_TOKEN_GATE
from ..utility.text import DEFAULT_NORMALIZATION, NormalizationOptions, normalize_text, tokenize

logger = logging.getLogger(__name__)


def _token_hits(line_tokens: List[str], region_tokens: List[str]) -> int:
    choices = sorted(set(region_tokens))
    hits = 0
    for token in line_tokens:
        best = process.extractOne(token, choices, scorer=Levenshtein.normalized_similarity,
                                  score_cutoff=FUZZY_TOKEN_GATE)
        if best is not None:
            hits += 1
    return hits


def fuzzy_score(line_text: str, region_text: str) -> float:
    """
    Share of line tokens that fuzzy-hit the region: a token hits when some region token
    has Levenshtein similarity of at least 0.8 with it.

    Inputs are expected to be normalized already. 0 when either side has no tokens.
    """
    line_tokens = tokenize(line_text)
    region_tokens = tokenize(region_text)
    if not line_tokens or not region_tokens:
        return 0.0
    return _token_hits(line_tokens, region_tokens) / len(line_tokens)


def fuzzy_score_matrix(slide: SlideDocument, transcript: Transcript,
                       options: NormalizationOptions = DEFAULT_NORMALIZATION) -> ScoreMatrix:
    region_texts = [normalize_text(region.text, options) for region in slide.regions]
    scores = np.zeros((len(transcript.lines), len(slide.regions)))
    for row, line in enumerate(transcript.lines):
        line_text = normalize_text(line.text, options)
        for col, region_text in enumerate(region_texts):
            scores[row, col] = fuzzy_score(line_text, region_text)
    logger.debug(f"Fuzzy scores for slide {slide.slide_id}: {scores.shape[0]} lines x {scores.shape[1]} regions")
    return ScoreMatrix(tuple(transcript.line_ids), tuple(slide.region_ids), scores)
