import hashlib
import json
import logging
from pathlib import Path
from typing import Dict

from .specs import LlmProviderKind, LlmProviderSpec
from .transport import ProtocolError, ProviderError, post_json
from ..utility.constants import MAX_PROMPT_BYTES

logger = logging.getLogger(__name__)


class UnscriptedPromptError(ProviderError):
    pass


def prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class LlmProvider:
    def __init__(self, spec: LlmProviderSpec):
        self.spec = spec

    @property
    def model_name(self) -> str:
        return self.spec.model_name

    def complete(self, prompt: str) -> str:
        """Return the model's reply to prompt verbatim."""
        if len(prompt.encode("utf-8")) > MAX_PROMPT_BYTES:
            raise ValueError(f"prompt exceeds {MAX_PROMPT_BYTES} bytes")
        return self._complete(prompt)

    def _complete(self, prompt: str) -> str:
        raise NotImplementedError


class ScriptedLlmProvider(LlmProvider):
    """Replies looked up by the SHA-256 of the prompt; used for tests and offline runs."""

    def __init__(self, spec: LlmProviderSpec):
        super().__init__(spec)
        self.replies: Dict[str, str] = self.load_script(spec.script_path)

    @staticmethod
    def load_script(path) -> Dict[str, str]:
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                replies = json.load(f)
        except (OSError, ValueError) as e:
            raise ProviderError(f"cannot read scripted replies {path}: {e}") from e
        if not isinstance(replies, dict) or not all(isinstance(v, str) for v in replies.values()):
            raise ProviderError(f"{path}: scripted replies must map prompt hashes to strings")
        logger.debug(f"Loaded {len(replies)} scripted replies from {path}")
        return replies

    def _complete(self, prompt: str) -> str:
        key = prompt_hash(prompt)
        if key not in self.replies:
            raise UnscriptedPromptError(f"unscripted prompt {key}: {prompt[:80]!r}")
        return self.replies[key]


class HttpLlmProvider(LlmProvider):
    def _complete(self, prompt: str) -> str:
        payload = post_json(self.spec.endpoint_url,
                            {"model": self.spec.model_name, "prompt": prompt, "temperature": 0},
                            self.spec.timeout, self.spec.max_retries)
        text = payload.get("text")
        if not isinstance(text, str):
            raise ProtocolError(f"{self.spec.endpoint_url} reply has no 'text' string")
        return text


def create_llm_provider(spec: LlmProviderSpec) -> LlmProvider:
    if spec.kind == LlmProviderKind.SCRIPTED:
        return ScriptedLlmProvider(spec)
    if spec.kind == LlmProviderKind.HTTP:
        return HttpLlmProvider(spec)
    raise ValueError(f"Unknown llm provider kind: {spec.kind}")


def complete(prompt: str, spec: LlmProviderSpec) -> str:
    return create_llm_provider(spec).complete(prompt)
