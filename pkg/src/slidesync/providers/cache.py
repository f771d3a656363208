import hashlib
import json
import logging
import threading
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..utility.files import atomic_write_bytes

logger = logging.getLogger(__name__)


def content_key(text: str, model_name: str) -> str:
    return hashlib.sha256(f"{model_name}\x00{text}".encode("utf-8")).hexdigest()


class VectorCache:
    """
    On-disk embedding cache: JSON {sha256(model, text): [floats]}.

    Writes go through write-then-rename, and the in-memory view is guarded by a lock, so
    concurrent embed calls cannot corrupt the file.
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._vectors: Dict[str, List[float]] = {}
        self._dirty = False
        if self.path.exists():
            with open(self.path, "r", encoding="utf-8") as f:
                data = json.load(f)
            if not isinstance(data, dict):
                raise ValueError(f"{self.path}: embedding cache must be a JSON object")
            self._vectors = data
            logger.debug(f"Loaded {len(self._vectors)} cached vectors from {self.path}")

    def __len__(self) -> int:
        return len(self._vectors)

    def get(self, text: str, model_name: str) -> Optional[List[float]]:
        with self._lock:
            return self._vectors.get(content_key(text, model_name))

    def put(self, text: str, model_name: str, vector: List[float]) -> None:
        with self._lock:
            self._vectors[content_key(text, model_name)] = [float(v) for v in vector]
            self._dirty = True

    def flush(self) -> None:
        with self._lock:
            if not self._dirty:
                return
            payload = json.dumps(self._vectors, sort_keys=True).encode("utf-8")
            atomic_write_bytes(self.path, payload)
            self._dirty = False
