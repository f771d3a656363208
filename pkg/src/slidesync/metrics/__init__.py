from .alignment_metrics import (AlignmentScores, LineScores, correctness_score, evaluate_alignment, evaluate_dataset,
                                missing_score, precision_recall_f1)
from .asr_metrics import (AsrSampleScores, AsrScores, cer, edit_distance, evaluate_transcripts, transcription_prf,
                          wer)
from .corpus_stats import CorpusStats, corpus_stats, duration_histogram, slide_rows, unique_alpha_words

__all__ = [
    'AlignmentScores', 'LineScores', 'correctness_score', 'evaluate_alignment', 'evaluate_dataset',
    'missing_score', 'precision_recall_f1',
    'AsrSampleScores', 'AsrScores', 'cer', 'edit_distance', 'evaluate_transcripts', 'transcription_prf', 'wer',
    'CorpusStats', 'corpus_stats', 'duration_histogram', 'slide_rows', 'unique_alpha_words',
]
