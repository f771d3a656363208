from .lexicon import (Substitution, SubstitutionLog, build_slide_lexicon, correct_lexical, correct_token,
                      correct_transcript_lexical, nearest_lexicon_token)
from .llm_correction import correct_llm, render_correction_prompt

__all__ = [
    'Substitution', 'SubstitutionLog', 'build_slide_lexicon', 'correct_lexical', 'correct_token',
    'correct_transcript_lexical', 'nearest_lexicon_token', 'correct_llm', 'render_correction_prompt',
]
