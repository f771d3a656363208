import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..utility.constants import (DEFAULT_EMBEDDING_MODEL, DEFAULT_HASHING_DIM, DEFAULT_PROVIDER_RETRIES,
                                 DEFAULT_PROVIDER_TIMEOUT)


class EmbeddingProviderKind(Enum):
    HTTP = "http"
    FILE = "file"
    HASHING = "hashing"


class LlmProviderKind(Enum):
    HTTP = "http"
    SCRIPTED = "scripted"


def _resolve(path: Optional[str], base_dir: Optional[Path]) -> Optional[str]:
    if path is None or base_dir is None or Path(path).is_absolute():
        return path
    return str(base_dir / path)


@dataclass(frozen=True)
class EmbeddingProviderSpec:
    kind: EmbeddingProviderKind
    vector_dim: int = DEFAULT_HASHING_DIM
    endpoint_url: Optional[str] = None
    cache_path: Optional[str] = None
    model_name: str = DEFAULT_EMBEDDING_MODEL
    timeout: float = DEFAULT_PROVIDER_TIMEOUT
    max_retries: int = DEFAULT_PROVIDER_RETRIES

    def __post_init__(self):
        if self.kind == EmbeddingProviderKind.HTTP and not self.endpoint_url:
            raise ValueError("http embedding provider requires endpoint_url")
        if self.kind == EmbeddingProviderKind.FILE and not self.cache_path:
            raise ValueError("file embedding provider requires cache_path")
        if not isinstance(self.vector_dim, int) or self.vector_dim <= 0:
            raise ValueError(f"vector_dim must be a positive integer, got {self.vector_dim}")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if not 0 <= self.max_retries <= 10:
            raise ValueError("max_retries must be between 0 and 10")

    @classmethod
    def from_dict(cls, raw: Dict[str, Any], base_dir: Optional[Path] = None) -> 'EmbeddingProviderSpec':
        try:
            return cls(
                kind=EmbeddingProviderKind(raw["kind"]),
                vector_dim=raw.get("vector_dim", DEFAULT_HASHING_DIM),
                endpoint_url=raw.get("endpoint_url"),
                cache_path=_resolve(raw.get("cache_path"), base_dir),
                model_name=raw.get("model_name", DEFAULT_EMBEDDING_MODEL),
                timeout=float(raw.get("timeout", DEFAULT_PROVIDER_TIMEOUT)),
                max_retries=int(raw.get("max_retries", DEFAULT_PROVIDER_RETRIES)),
            )
        except KeyError as e:
            raise ValueError(f"embedding provider config missing {e}") from e


@dataclass(frozen=True)
class LlmProviderSpec:
    kind: LlmProviderKind
    model_name: str = "scripted"
    endpoint_url: Optional[str] = None
    script_path: Optional[str] = None
    timeout: float = DEFAULT_PROVIDER_TIMEOUT
    max_retries: int = DEFAULT_PROVIDER_RETRIES

    def __post_init__(self):
        if self.kind == LlmProviderKind.HTTP and not self.endpoint_url:
            raise ValueError("http llm provider requires endpoint_url")
        if self.kind == LlmProviderKind.SCRIPTED and not self.script_path:
            raise ValueError("scripted llm provider requires script_path")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if not 0 <= self.max_retries <= 10:
            raise ValueError("max_retries must be between 0 and 10")

    @classmethod
    def from_dict(cls, raw: Dict[str, Any], base_dir: Optional[Path] = None) -> 'LlmProviderSpec':
        try:
            return cls(
                kind=LlmProviderKind(raw["kind"]),
                model_name=raw.get("model_name", "scripted"),
                endpoint_url=raw.get("endpoint_url"),
                script_path=_resolve(raw.get("script_path"), base_dir),
                timeout=float(raw.get("timeout", DEFAULT_PROVIDER_TIMEOUT)),
                max_retries=int(raw.get("max_retries", DEFAULT_PROVIDER_RETRIES)),
            )
        except KeyError as e:
            raise ValueError(f"llm provider config missing {e}") from e


@dataclass(frozen=True)
class ProviderConfig:
    embedding: Optional[EmbeddingProviderSpec] = None
    llm: Optional[LlmProviderSpec] = None

    @property
    def uses_network(self) -> bool:
        return ((self.embedding is not None and self.embedding.kind == EmbeddingProviderKind.HTTP)
                or (self.llm is not None and self.llm.kind == LlmProviderKind.HTTP))


def load_provider_config(path: Union[str, Path]) -> ProviderConfig:
    """Read a provider-config JSON file: {"embedding": {...}, "llm": {...}}, both optional."""
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f)
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: provider config must be a JSON object")
    embedding = raw.get("embedding")
    llm = raw.get("llm")
    return ProviderConfig(
        embedding=EmbeddingProviderSpec.from_dict(embedding, path.parent) if embedding else None,
        llm=LlmProviderSpec.from_dict(llm, path.parent) if llm else None,
    )
