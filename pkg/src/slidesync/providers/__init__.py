from .cache import VectorCache, content_key
from .embedding import (EmbeddingProvider, FileEmbeddingProvider, HashingEmbeddingProvider, HttpEmbeddingProvider,
                        create_embedding_provider, embed)
from .llm import (HttpLlmProvider, LlmProvider, ScriptedLlmProvider, UnscriptedPromptError, complete,
                  create_llm_provider, prompt_hash)
from .specs import (EmbeddingProviderKind, EmbeddingProviderSpec, LlmProviderKind, LlmProviderSpec, ProviderConfig,
                    load_provider_config)
from .transport import ProtocolError, ProviderError, post_json

__all__ = [
    'EmbeddingProvider', 'FileEmbeddingProvider', 'HashingEmbeddingProvider', 'HttpEmbeddingProvider',
    'create_embedding_provider', 'embed',
    'HttpLlmProvider', 'LlmProvider', 'ScriptedLlmProvider', 'UnscriptedPromptError', 'complete',
    'create_llm_provider', 'prompt_hash',
    'EmbeddingProviderKind', 'EmbeddingProviderSpec', 'LlmProviderKind', 'LlmProviderSpec', 'ProviderConfig',
    'load_provider_config', 'ProtocolError', 'ProviderError', 'post_json', 'VectorCache', 'content_key',
]
