"""Text embeddings behind a pluggable provider interface.

Two providers ship here: a deterministic character-n-gram hashing embedder
(dependency-free, used by every test) and an optional sentence-transformer
wrapper around the default encoder model. Both return unit-normalized vectors
tagged with their model id.
"""

import hashlib
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from novelscope.errors import DimensionMismatch, ProviderUnavailable

DEFAULT_ENCODER_MODEL = "all-MiniLM-L6-v2"


@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple[float, ...]
    model_id: str

    def __len__(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


class Embedder(Protocol):
    model_id: str
    dimension: int

    def embed(self, text: str) -> EmbeddingVector: ...


def _finish(raw: np.ndarray, model_id: str) -> EmbeddingVector:
    vec = np.asarray(raw, dtype=np.float64)
    if not np.all(np.isfinite(vec)):
        raise ProviderUnavailable(f"embedding from {model_id} contains non-finite values")
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        # Degenerate input: fall back to a fixed unit vector so the contract holds.
        vec = np.zeros_like(vec)
        vec[0] = 1.0
    else:
        vec = vec / norm
    return EmbeddingVector(values=tuple(float(x) for x in vec), model_id=model_id)


class HashingEmbedder:
    """Deterministic character-trigram hashing embedder.

    Texts sharing vocabulary land on shared buckets, so lexical overlap maps
    to cosine similarity. Not a semantic model, but stable across platforms
    and good enough to rank fixture pools reproducibly.
    """

    def __init__(self, dimension: int = 384):
        self.dimension = dimension
        self.model_id = f"hashing-trigram-{dimension}"

    def embed(self, text: str) -> EmbeddingVector:
        if not text.strip():
            raise ValueError("cannot embed empty text")
        counts = np.zeros(self.dimension, dtype=np.float64)
        padded = f"  {text.lower()} "
        for i in range(len(padded) - 2):
            gram = padded[i : i + 3].encode("utf-8")
            digest = hashlib.blake2b(gram, digest_size=8).digest()
            bucket = int.from_bytes(digest[:4], "big") % self.dimension
            sign = 1.0 if digest[4] % 2 == 0 else -1.0
            counts[bucket] += sign
        return _finish(counts, self.model_id)


class SentenceTransformerEmbedder:
    """Local inference via sentence-transformers; imported lazily."""

    def __init__(self, model_id: str = DEFAULT_ENCODER_MODEL):
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:  # pragma: no cover - optional dependency
            raise ProviderUnavailable(
                "sentence-transformers is not installed; "
                "install the local-embeddings extra or use HashingEmbedder"
            ) from exc
        self._model = SentenceTransformer(model_id)
        self.model_id = model_id
        self.dimension = int(self._model.get_sentence_embedding_dimension())

    def embed(self, text: str) -> EmbeddingVector:  # pragma: no cover - needs weights
        if not text.strip():
            raise ValueError("cannot embed empty text")
        raw = self._model.encode([text], normalize_embeddings=False)[0]
        return _finish(np.asarray(raw), self.model_id)


def cosine(u: EmbeddingVector, v: EmbeddingVector) -> float:
    """Dot product of the (unit) inputs, clamped into [-1, 1]."""
    if len(u) != len(v):
        raise DimensionMismatch(f"dimensions differ: {len(u)} vs {len(v)}")
    value = float(np.dot(u.array(), v.array()))
    return max(-1.0, min(1.0, value))


def clamp_display(similarity: float) -> float:
    """Display mapping: negative cosines floor at 0, top clamps at 1."""
    return max(0.0, min(1.0, similarity))
