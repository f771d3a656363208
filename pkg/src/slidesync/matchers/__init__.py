from .align import (EmbeddingMatcher, FuzzyMatcher, LlmSelectMatcher, LlmYesNoMatcher, Matcher, align,
                    create_matcher)
from .config import MatcherConfig, MatcherError, MatcherMethod
from .fuzzy import fuzzy_score, fuzzy_score_matrix
from .llm import (DecisionError, Selection, llm_select, llm_yes_no_decide, parse_selection, parse_yes_no,
                  render_select_prompt, render_yes_no_prompt)
from .score_matrix import ScoreMatrix
from .semantic import embedding_score, embedding_score_matrix, rescaled_cosine
from ..utility.text import NormalizationOptions, levenshtein_similarity, normalize_text

__all__ = [
    'EmbeddingMatcher', 'FuzzyMatcher', 'LlmSelectMatcher', 'LlmYesNoMatcher', 'Matcher', 'align', 'create_matcher',
    'MatcherConfig', 'MatcherError', 'MatcherMethod', 'fuzzy_score', 'fuzzy_score_matrix',
    'DecisionError', 'Selection', 'llm_select', 'llm_yes_no_decide', 'parse_selection', 'parse_yes_no',
    'render_select_prompt', 'render_yes_no_prompt', 'ScoreMatrix',
    'embedding_score', 'embedding_score_matrix', 'rescaled_cosine',
    'NormalizationOptions', 'levenshtein_similarity', 'normalize_text',
]
