import logging
from typing import List, Sequence

import numpy as np
from sklearn.feature_extraction.text import HashingVectorizer

from .cache import VectorCache
from .specs import EmbeddingProviderKind, EmbeddingProviderSpec
from .transport import ProtocolError, ProviderError, post_json
from ..utility.constants import MAX_EMBED_TEXT_BYTES

logger = logging.getLogger(__name__)


def unit_normalize(vectors: np.ndarray) -> np.ndarray:
    """L2-normalize rows; all-zero rows stay zero."""
    norms = np.linalg.norm(vectors, axis=1, keepdims=True)
    safe = np.where(norms == 0, 1.0, norms)
    return vectors / safe


class EmbeddingProvider:
    """
    Base class: validates input and maps empty texts to the zero vector; subclasses
    embed the remaining texts in _embed.
    """

    def __init__(self, spec: EmbeddingProviderSpec):
        self.spec = spec

    @property
    def model_name(self) -> str:
        return self.spec.model_name

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        """
        One row per input text, in input order. Rows have unit L2 norm, except empty
        texts, which map to the zero vector.
        """
        texts = list(texts)
        if not texts:
            raise ValueError("embed requires a non-empty list of texts")
        for index, text in enumerate(texts):
            if len(text.encode("utf-8")) > MAX_EMBED_TEXT_BYTES:
                raise ValueError(f"text {index} exceeds {MAX_EMBED_TEXT_BYTES} bytes")
        vectors = np.zeros((len(texts), self.spec.vector_dim), dtype=np.float64)
        pending = [i for i, text in enumerate(texts) if text.strip()]
        if pending:
            embedded = np.asarray(self._embed([texts[i] for i in pending]), dtype=np.float64)
            if embedded.shape != (len(pending), self.spec.vector_dim):
                raise ProtocolError(f"expected {len(pending)} vectors of dim {self.spec.vector_dim}, got shape {embedded.shape}")
            vectors[pending] = unit_normalize(embedded)
        return vectors

    def _embed(self, texts: List[str]) -> np.ndarray:
        raise NotImplementedError


class HashingEmbeddingProvider(EmbeddingProvider):
    """
    Deterministic local pseudo-embedding: character 3-grams (word-boundary padded),
    signed feature hashing into vector_dim buckets, L2-normalized. Tracks lexical
    overlap, not meaning.
    """

    def __init__(self, spec: EmbeddingProviderSpec):
        super().__init__(spec)
        self.vectorizer = HashingVectorizer(
            analyzer="char_wb",
            ngram_range=(3, 3),
            n_features=spec.vector_dim,
            alternate_sign=True,
            norm=None,
            lowercase=False,
        )

    @property
    def model_name(self) -> str:
        return f"hashing-{self.spec.vector_dim}"

    def _embed(self, texts: List[str]) -> np.ndarray:
        return self.vectorizer.transform(texts).toarray()


class FileEmbeddingProvider(EmbeddingProvider):
    """Precomputed vectors read from a cache file; a missing text is an error."""

    def __init__(self, spec: EmbeddingProviderSpec):
        super().__init__(spec)
        self.cache = VectorCache(spec.cache_path)

    def _embed(self, texts: List[str]) -> np.ndarray:
        rows = []
        for text in texts:
            vector = self.cache.get(text, self.spec.model_name)
            if vector is None:
                raise ProviderError(f"no vector for text '{text[:40]}' in {self.spec.cache_path}")
            rows.append(vector)
        return np.asarray(rows, dtype=np.float64)


class HttpEmbeddingProvider(EmbeddingProvider):
    """Embedding service over HTTP; replies are cached by (text, model) when cache_path is set."""

    def __init__(self, spec: EmbeddingProviderSpec):
        super().__init__(spec)
        self.cache = VectorCache(spec.cache_path) if spec.cache_path else None

    def _embed(self, texts: List[str]) -> np.ndarray:
        cached = [self.cache.get(text, self.spec.model_name) if self.cache else None for text in texts]
        missing = sorted({text for text, vector in zip(texts, cached) if vector is None})
        fetched = {}
        if missing:
            logger.debug(f"Requesting {len(missing)} embeddings from {self.spec.endpoint_url}")
            payload = post_json(self.spec.endpoint_url, {"model": self.spec.model_name, "texts": missing},
                                self.spec.timeout, self.spec.max_retries)
            vectors = payload.get("vectors")
            if not isinstance(vectors, list) or len(vectors) != len(missing):
                raise ProtocolError(f"expected {len(missing)} vectors from {self.spec.endpoint_url}")
            for text, vector in zip(missing, vectors):
                if not isinstance(vector, list) or len(vector) != self.spec.vector_dim:
                    raise ProtocolError(f"vector dimension mismatch: expected {self.spec.vector_dim}")
                fetched[text] = vector
                if self.cache is not None:
                    self.cache.put(text, self.spec.model_name, vector)
            if self.cache is not None:
                self.cache.flush()
        return np.asarray([vector if vector is not None else fetched[text] for text, vector in zip(texts, cached)],
                          dtype=np.float64)


def create_embedding_provider(spec: EmbeddingProviderSpec) -> EmbeddingProvider:
    if spec.kind == EmbeddingProviderKind.HASHING:
        return HashingEmbeddingProvider(spec)
    if spec.kind == EmbeddingProviderKind.FILE:
        return FileEmbeddingProvider(spec)
    if spec.kind == EmbeddingProviderKind.HTTP:
        return HttpEmbeddingProvider(spec)
    raise ValueError(f"Unknown embedding provider kind: {spec.kind}")


def embed(texts: Sequence[str], spec: EmbeddingProviderSpec) -> np.ndarray:
    return create_embedding_provider(spec).embed(texts)
