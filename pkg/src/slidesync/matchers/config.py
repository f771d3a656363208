from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from ..classes.policy import ThresholdPolicy
from ..providers.embedding import EmbeddingProvider, create_embedding_provider
from ..providers.llm import LlmProvider, create_llm_provider
from ..providers.specs import EmbeddingProviderSpec, LlmProviderSpec
from ..utility.constants import DEFAULT_MAX_IN_FLIGHT
from ..utility.text import DEFAULT_NORMALIZATION, NormalizationOptions


class MatcherError(Exception):
    """A matcher could not decide a (line, region) pair."""


class MatcherMethod(Enum):
    FUZZY = "fuzzy"
    EMBEDDING = "embedding"
    LLM_YES_NO = "llm_yes_no"
    LLM_SELECT = "llm_select"

    @classmethod
    def from_string(cls, name: str) -> 'MatcherMethod':
        """Accepts both 'llm_select' and the CLI spelling 'llm-select'."""
        try:
            return cls(name.strip().lower().replace("-", "_"))
        except ValueError:
            raise ValueError(f"Unknown matcher method '{name}'. Known: {', '.join(m.value for m in cls)}")

    @property
    def is_llm(self) -> bool:
        return self in (MatcherMethod.LLM_YES_NO, MatcherMethod.LLM_SELECT)


@dataclass(frozen=True)
class MatcherConfig:
    """
    Everything align needs besides the slide and transcript.

    Provider references may be specs (a provider is built per use) or ready provider
    instances (shared, e.g. across the slides of a run). LLM methods ignore the policy's
    thresholds.
    """
    method: MatcherMethod
    policy: ThresholdPolicy
    embedding_provider: Optional[Union[EmbeddingProviderSpec, EmbeddingProvider]] = None
    llm_provider: Optional[Union[LlmProviderSpec, LlmProvider]] = None
    normalization: NormalizationOptions = DEFAULT_NORMALIZATION
    max_in_flight: int = DEFAULT_MAX_IN_FLIGHT

    def __post_init__(self):
        if self.method == MatcherMethod.EMBEDDING and self.embedding_provider is None:
            raise ValueError("embedding method requires an embedding provider")
        if self.method.is_llm and self.llm_provider is None:
            raise ValueError(f"{self.method.value} method requires an llm provider")
        if self.max_in_flight < 1:
            raise ValueError(f"max_in_flight must be at least 1, got {self.max_in_flight}")

    def resolve_embedding_provider(self) -> EmbeddingProvider:
        if isinstance(self.embedding_provider, EmbeddingProviderSpec):
            return create_embedding_provider(self.embedding_provider)
        return self.embedding_provider

    def resolve_llm_provider(self) -> LlmProvider:
        if isinstance(self.llm_provider, LlmProviderSpec):
            return create_llm_provider(self.llm_provider)
        return self.llm_provider
