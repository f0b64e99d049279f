"""Text embedding backends.

Two backends sit behind one config: a fully deterministic offline baseline
(feature hashing over word tokens and character trigrams) and a remote
HTTP endpoint speaking the common embeddings request shape. Both produce
unit-normalized vectors; the all-zeros vector is the flagged degenerate
case for featureless input.
"""
from __future__ import annotations

import hashlib
import math
import os
import re
import threading
import time
from dataclasses import dataclass

import requests

from .errors import ConfigInvalid, DimensionMismatch, RemoteUnavailable

# Version tag for the hashing scheme; part of every index fingerprint so a
# stale index cannot silently serve a different embedder.
HASH_VERSION = "sha256x8be-trigram-v1"

DEFAULT_BASELINE_DIMS = 512
MIN_BASELINE_DIMS = 16

_TOKEN_RE = re.compile(r"[0-9a-z]+")


@dataclass(frozen=True)
class EmbeddingVector:
    """Fixed-length real vector; unit L2 norm unless ``degenerate``."""

    values: tuple[float, ...]
    degenerate: bool = False

    @property
    def dims(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class EmbedderConfig:
    """Selects and parameterizes an embedding backend.

    ``backend`` is ``"baseline"`` or ``"remote"``. The baseline needs only
    ``dims``; the remote backend needs ``endpoint``, ``model`` and the name
    of the environment variable holding the auth token.
    """

    backend: str = "baseline"
    dims: int = DEFAULT_BASELINE_DIMS
    endpoint: str = ""
    model: str = ""
    auth_env: str = ""
    max_in_flight: int = 4
    retries: int = 3
    backoff_seconds: float = 0.5
    timeout_seconds: float = 30.0

    def __post_init__(self) -> None:
        if self.backend not in ("baseline", "remote"):
            raise ConfigInvalid(f"unknown embedder backend {self.backend!r}")
        if self.backend == "baseline" and self.dims < MIN_BASELINE_DIMS:
            raise ConfigInvalid(
                f"baseline dims must be >= {MIN_BASELINE_DIMS}, got {self.dims}"
            )
        if self.backend == "remote" and not self.endpoint:
            raise ConfigInvalid("remote embedder requires an endpoint")
        if self.max_in_flight < 1:
            raise ConfigInvalid("max_in_flight must be >= 1")


def _hash64(feature: str) -> int:
    """First 8 bytes of SHA-256 of the UTF-8 feature, read big-endian."""
    return int.from_bytes(hashlib.sha256(feature.encode("utf-8")).digest()[:8], "big")


def _features(text: str) -> list[str]:
    """Word tokens (lowercased ASCII alphanumeric runs) plus their trigrams."""
    feats: list[str] = []
    for token in _TOKEN_RE.findall(text.lower()):
        feats.append(token)
        feats.extend(token[i : i + 3] for i in range(len(token) - 2))
    return feats


def baseline_hash_embed(text: str, dims: int) -> EmbeddingVector:
    """Deterministic bag-of-features hashing embedding.

    Each feature lands at index ``hash mod dims`` with sign +1 when bit 63
    of the hash is clear, -1 otherwise; the accumulated vector is then
    L2-normalized. Featureless text yields the flagged zero vector.
    """
    if dims < MIN_BASELINE_DIMS:
        raise ConfigInvalid(f"dims must be >= {MIN_BASELINE_DIMS}, got {dims}")
    acc = [0.0] * dims
    for feature in _features(text):
        h = _hash64(feature)
        acc[h % dims] += 1.0 if (h >> 63) & 1 == 0 else -1.0
    norm = math.sqrt(sum(x * x for x in acc))
    if norm == 0.0:
        return EmbeddingVector(tuple(acc), degenerate=True)
    return EmbeddingVector(tuple(x / norm for x in acc))


def cosine(u: EmbeddingVector, v: EmbeddingVector) -> float:
    """Cosine similarity; 0.0 when either vector has zero norm."""
    if u.dims != v.dims:
        raise DimensionMismatch(f"cosine over {u.dims} vs {v.dims} dims")
    dot = sum(a * b for a, b in zip(u.values, v.values))
    nu = math.sqrt(sum(a * a for a in u.values))
    nv = math.sqrt(sum(b * b for b in v.values))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def _normalize(values: list[float]) -> EmbeddingVector:
    norm = math.sqrt(sum(x * x for x in values))
    if norm == 0.0:
        return EmbeddingVector(tuple(values), degenerate=True)
    return EmbeddingVector(tuple(x / norm for x in values))


class Embedder:
    """Stateful embedding handle: owns retries and the in-flight limit."""

    def __init__(self, config: EmbedderConfig):
        self.config = config
        self._dims: int | None = config.dims if config.backend == "baseline" else None
        self._gate = threading.BoundedSemaphore(config.max_in_flight)

    @property
    def fingerprint(self) -> str:
        """Identity string stored in indexes built with this embedder."""
        if self.config.backend == "baseline":
            return f"baseline:{HASH_VERSION}:d{self.config.dims}"
        dims = f":d{self._dims}" if self._dims is not None else ""
        return f"remote:{self.config.model}@{self.config.endpoint}{dims}"

    def embed(self, text: str) -> EmbeddingVector:
        if self.config.backend == "baseline":
            return baseline_hash_embed(text, self.config.dims)
        return self._embed_remote(text)

    def _embed_remote(self, text: str) -> EmbeddingVector:
        if text == "":
            dims = self._dims or 0
            return EmbeddingVector(tuple([0.0] * dims), degenerate=True)
        headers = {"Content-Type": "application/json"}
        if self.config.auth_env:
            token = os.environ.get(self.config.auth_env, "")
            if not token:
                raise ConfigInvalid(
                    f"auth environment variable {self.config.auth_env} is not set"
                )
            headers["Authorization"] = f"Bearer {token}"
        body = {"model": self.config.model, "input": [text]}
        url = self.config.endpoint.rstrip("/") + "/embeddings"
        last_error: Exception | None = None
        for attempt in range(self.config.retries):
            if attempt > 0:
                time.sleep(self.config.backoff_seconds * (2 ** (attempt - 1)))
            try:
                with self._gate:
                    resp = requests.post(
                        url, json=body, headers=headers, timeout=self.config.timeout_seconds
                    )
                if resp.status_code >= 500:
                    last_error = RemoteUnavailable(f"HTTP {resp.status_code} from {url}")
                    continue
                resp.raise_for_status()
                payload = resp.json()
                values = [float(x) for x in payload["data"][0]["embedding"]]
            except (requests.RequestException, KeyError, IndexError, ValueError, TypeError) as exc:
                last_error = exc
                continue
            if self._dims is None:
                self._dims = len(values)
            # Providers disagree on whether vectors come back normalized.
            return _normalize(values)
        raise RemoteUnavailable(f"embeddings endpoint failed after {self.config.retries} attempts: {last_error}")


def embed_text(config: EmbedderConfig, text: str) -> EmbeddingVector:
    """One-shot convenience wrapper over :class:`Embedder`."""
    return Embedder(config).embed(text)
