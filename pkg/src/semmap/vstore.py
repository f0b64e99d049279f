"""Persistable exact-scan vector index over rendered term subgraphs.

Retrieval is an exhaustive cosine scan (the vocabulary is low thousands of
terms; exactness keeps testing honest). Entries are held as float32 — the
same width the on-disk format uses — so a loaded index ranks identically
to the one that was saved.

File layout (all integers little-endian):

    magic b"SWIX1"
    dims        uint32
    count       uint32
    fingerprint uint32 length + UTF-8 bytes
    count entries, each:
        iri     uint32 length + UTF-8 bytes
        kind    1 byte (0 = Class, 1 = Property)
        vector  dims * float32
        text    uint32 length + UTF-8 bytes
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .embed import Embedder, EmbedderConfig, EmbeddingVector
from .errors import CorruptIndexFile, DimensionMismatch
from .vocab import (
    DEFAULT_HAS_PROPERTY_CAP,
    TermKind,
    Vocabulary,
    build_subgraph,
)

MAGIC = b"SWIX1"

_KIND_BYTE = {TermKind.CLASS: 0, TermKind.PROPERTY: 1}
_BYTE_KIND = {v: k for k, v in _KIND_BYTE.items()}


def _sequential_row_sums(products: np.ndarray) -> np.ndarray:
    """Left-to-right float64 row sums.

    Scores are defined by sequential accumulation so that byte-identical
    vectors always score byte-identically and tie-breaks stay exact; BLAS
    reductions round differently depending on a row's position in the
    matrix. cumsum is sequential by construction.
    """
    if products.shape[1] == 0:
        return np.zeros(products.shape[0], dtype=np.float64)
    return np.cumsum(products, axis=1)[:, -1]


@dataclass(frozen=True, eq=False)
class IndexEntry:
    iri: str
    kind: TermKind
    vector: np.ndarray  # float32, shape (dims,)
    rendered_text: str


class VectorIndex:
    """Immutable after construction; concurrent ``top_k`` calls are safe."""

    def __init__(self, entries: Sequence[IndexEntry], dims: int, embedder_fingerprint: str):
        ordered = sorted(entries, key=lambda e: e.iri)
        seen: set[str] = set()
        for entry in ordered:
            if entry.iri in seen:
                raise CorruptIndexFile(f"duplicate iri in index: {entry.iri}")
            seen.add(entry.iri)
            if entry.vector.shape != (dims,):
                raise DimensionMismatch(
                    f"entry {entry.iri} has {entry.vector.shape[0]} dims, index has {dims}"
                )
        self.entries: tuple[IndexEntry, ...] = tuple(ordered)
        self.dims = dims
        self.embedder_fingerprint = embedder_fingerprint
        self._by_iri = {e.iri: e for e in self.entries}
        self._iris = np.array([e.iri for e in self.entries], dtype=object)
        self._kinds = np.array([_KIND_BYTE[e.kind] for e in self.entries], dtype=np.uint8)
        if self.entries:
            self._matrix = np.stack([e.vector for e in self.entries]).astype(np.float64)
            self._norms = np.sqrt(_sequential_row_sums(self._matrix * self._matrix))
        else:
            self._matrix = np.zeros((0, dims), dtype=np.float64)
            self._norms = np.zeros(0, dtype=np.float64)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, iri: str) -> IndexEntry | None:
        return self._by_iri.get(iri)

    def top_k(
        self, query: EmbeddingVector, k: int, kind: TermKind | None = None
    ) -> list[tuple[str, float]]:
        """The k highest-cosine entries, sorted by (score desc, iri asc)."""
        if query.dims != self.dims:
            raise DimensionMismatch(f"query has {query.dims} dims, index has {self.dims}")
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        if not self.entries:
            return []
        mask = (
            np.ones(len(self.entries), dtype=bool)
            if kind is None
            else self._kinds == _KIND_BYTE[kind]
        )
        if not mask.any():
            return []
        q = np.asarray(query.values, dtype=np.float64)
        qnorm = float(np.sqrt(np.cumsum(q * q)[-1])) if q.size else 0.0
        dots = _sequential_row_sums(self._matrix[mask] * q)
        norms = self._norms[mask]
        denom = norms * qnorm
        with np.errstate(invalid="ignore", divide="ignore"):
            scores = np.where(denom > 0.0, dots / np.where(denom > 0.0, denom, 1.0), 0.0)
        iris = self._iris[mask]
        order = np.lexsort((iris, -scores))
        top = order[: min(k, len(order))]
        return [(str(iris[i]), float(scores[i])) for i in top]


def index_build(
    vocabulary: Vocabulary,
    embedder: Embedder | EmbedderConfig,
    include_pending: bool = False,
    has_property_cap: int = DEFAULT_HAS_PROPERTY_CAP,
) -> VectorIndex:
    """Embed every indexable term's rendered subgraph into a fresh index.

    All-or-nothing: any embedding failure propagates and no partial index
    is produced.
    """
    if isinstance(embedder, EmbedderConfig):
        embedder = Embedder(embedder)
    entries: list[IndexEntry] = []
    dims: int | None = None
    for term in vocabulary.active_terms(include_pending=include_pending):
        subgraph = build_subgraph(term, vocabulary, has_property_cap=has_property_cap)
        vector = embedder.embed(subgraph.rendered_text)
        if dims is None:
            dims = vector.dims
        entries.append(
            IndexEntry(
                iri=term.iri,
                kind=term.kind,
                vector=np.asarray(vector.values, dtype=np.float32),
                rendered_text=subgraph.rendered_text,
            )
        )
    if dims is None:
        dims = embedder.config.dims
    return VectorIndex(entries, dims=dims, embedder_fingerprint=embedder.fingerprint)


def _pack_str(text: str) -> bytes:
    data = text.encode("utf-8")
    return struct.pack("<I", len(data)) + data


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise CorruptIndexFile("truncated index file")
        chunk = self.data[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def take_u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def take_str(self) -> str:
        length = self.take_u32()
        try:
            return self.take(length).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorruptIndexFile(f"invalid UTF-8 in index file: {exc}") from exc

    def done(self) -> bool:
        return self.pos == len(self.data)


def index_save(index: VectorIndex, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    parts = [MAGIC, struct.pack("<II", index.dims, len(index.entries))]
    parts.append(_pack_str(index.embedder_fingerprint))
    for entry in index.entries:
        parts.append(_pack_str(entry.iri))
        parts.append(struct.pack("<B", _KIND_BYTE[entry.kind]))
        parts.append(entry.vector.astype("<f4").tobytes())
        parts.append(_pack_str(entry.rendered_text))
    path.write_bytes(b"".join(parts))
    return path


def index_load(path: str | Path) -> VectorIndex:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CorruptIndexFile(f"cannot read index file {path}: {exc}") from exc
    reader = _Reader(data)
    if reader.take(len(MAGIC)) != MAGIC:
        raise CorruptIndexFile(f"bad magic in {path}")
    dims = reader.take_u32()
    count = reader.take_u32()
    fingerprint = reader.take_str()
    entries: list[IndexEntry] = []
    for _ in range(count):
        iri = reader.take_str()
        kind_byte = reader.take(1)[0]
        if kind_byte not in _BYTE_KIND:
            raise CorruptIndexFile(f"unknown kind byte {kind_byte} in {path}")
        vector = np.frombuffer(reader.take(dims * 4), dtype="<f4").astype(np.float32)
        text = reader.take_str()
        entries.append(IndexEntry(iri=iri, kind=_BYTE_KIND[kind_byte], vector=vector, rendered_text=text))
    if not reader.done():
        raise CorruptIndexFile(f"trailing bytes in {path}")
    return VectorIndex(entries, dims=dims, embedder_fingerprint=fingerprint)
