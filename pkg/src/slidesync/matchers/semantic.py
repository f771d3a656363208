import logging
from typing import Dict, List, Tuple

import numpy as np

from .score_matrix import ScoreMatrix
from ..classes.alignment import Diagnostic
from ..classes.slide import SlideDocument
from ..classes.transcript import Transcript
from ..providers.embedding import EmbeddingProvider
from ..providers.transport import ProviderError
from ..utility.text import DEFAULT_NORMALIZATION, NormalizationOptions, normalize_text

logger = logging.getLogger(__name__)


def rescaled_cosine(line_vectors: np.ndarray, region_vectors: np.ndarray) -> np.ndarray:
    """
    (cosine + 1) / 2 for every row pair, clipped into [0, 1]. Pairs involving a zero
    vector (empty text) score 0.
    """
    line_norms = np.linalg.norm(line_vectors, axis=1)
    region_norms = np.linalg.norm(region_vectors, axis=1)
    denom = np.outer(line_norms, region_norms)
    with np.errstate(divide="ignore", invalid="ignore"):
        cosine = np.where(denom > 0, (line_vectors @ region_vectors.T) / np.where(denom > 0, denom, 1.0), 0.0)
    scores = np.clip((cosine + 1.0) / 2.0, 0.0, 1.0)
    scores[denom == 0] = 0.0
    return scores


def embedding_score(line_text: str, region_text: str, provider: EmbeddingProvider) -> float:
    """Rescaled cosine of the two texts' embeddings; 0 when either text is empty."""
    if not line_text.strip() or not region_text.strip():
        return 0.0
    vectors = provider.embed([line_text, region_text])
    return float(rescaled_cosine(vectors[:1], vectors[1:])[0, 0])


def _embed_unique(texts: List[str], provider: EmbeddingProvider) -> Dict[str, np.ndarray]:
    unique = sorted(set(texts))
    if not unique:
        return {}
    return dict(zip(unique, provider.embed(unique)))


def embedding_score_matrix(
    slide: SlideDocument,
    transcript: Transcript,
    provider: EmbeddingProvider,
    options: NormalizationOptions = DEFAULT_NORMALIZATION,
) -> Tuple[ScoreMatrix, Dict[str, Diagnostic]]:
    """
    Score every line against every region of the slide.

    When the region texts cannot be embedded every line of the slide is aborted with a
    provider_error diagnostic and the matrix is all zeros. Line texts are embedded in one
    batch, falling back to one request per line when the batch fails so a single bad
    line only loses that line.

    :return: the score matrix and a diagnostic per line that could not be scored
    """
    region_texts = [normalize_text(region.text, options) for region in slide.regions]
    line_texts = [normalize_text(line.text, options) for line in transcript.lines]
    try:
        region_vectors = _embed_unique(region_texts, provider)
    except ProviderError as e:
        logger.warning(f"Region embedding failed for slide {slide.slide_id}, aborting its lines: {e}")
        aborted = {line.line_id: Diagnostic(slide.slide_id, line.line_id, None, "provider_error",
                                            f"region embedding failed: {e}")
                   for line in transcript.lines}
        scores = np.zeros((len(transcript.lines), len(slide.regions)))
        return ScoreMatrix(tuple(transcript.line_ids), tuple(slide.region_ids), scores), aborted

    failed: Dict[str, Diagnostic] = {}
    try:
        line_vectors = _embed_unique(line_texts, provider)
    except ProviderError as e:
        logger.warning(f"Batch line embedding failed for slide {slide.slide_id}, retrying per line: {e}")
        line_vectors = {}
        for line, text in zip(transcript.lines, line_texts):
            if text in line_vectors:
                continue
            try:
                line_vectors.update(_embed_unique([text], provider))
            except ProviderError as line_error:
                failed[line.line_id] = Diagnostic(slide.slide_id, line.line_id, None, "provider_error", str(line_error))

    dim = provider.spec.vector_dim
    zero = np.zeros(dim)
    lines = np.array([line_vectors.get(text, zero) for text in line_texts]).reshape(len(line_texts), dim)
    regions = np.array([region_vectors.get(text, zero) for text in region_texts]).reshape(len(region_texts), dim)
    scores = rescaled_cosine(lines, regions)
    return ScoreMatrix(tuple(transcript.line_ids), tuple(slide.region_ids), scores), failed
