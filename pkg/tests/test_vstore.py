from __future__ import annotations

import json
import random

import numpy as np
import pytest

from semmap.embed import Embedder, EmbedderConfig, EmbeddingVector
from semmap.errors import CorruptIndexFile, DimensionMismatch
from semmap.vocab import TermKind, parse_vocabulary
from semmap.vstore import IndexEntry, VectorIndex, index_build, index_load, index_save

from .oracles import oracle_top_k

DIMS = 16


def _entry(iri: str, kind: TermKind, values) -> IndexEntry:
    return IndexEntry(iri=iri, kind=kind, vector=np.asarray(values, dtype=np.float32), rendered_text=f"text {iri}")


def _unit(*head: float) -> list[float]:
    values = list(head) + [0.0] * (DIMS - len(head))
    return values


def _query(*head: float) -> EmbeddingVector:
    return EmbeddingVector(tuple(_unit(*head)))


def _random_index(rng: random.Random, count: int, dims: int = DIMS) -> VectorIndex:
    entries = []
    for i in range(count):
        kind = TermKind.CLASS if rng.random() < 0.5 else TermKind.PROPERTY
        values = [rng.uniform(-1, 1) for _ in range(dims)]
        entries.append(_entry(f"https://example.org/t{i:05d}", kind, values))
    return VectorIndex(entries, dims=dims, embedder_fingerprint="test:fp")


def _oracle_rows(index: VectorIndex):
    return [(e.iri, e.kind.value, [float(x) for x in e.vector]) for e in index.entries]


def test_empty_vocabulary_builds_empty_index():
    vocab = parse_vocabulary(json.dumps({"@graph": []}))
    index = index_build(vocab, Embedder(EmbedderConfig(dims=16)))
    assert len(index) == 0
    assert index.top_k(_query(1.0), 5) == []


def test_two_term_fixture_vocabulary():
    doc = {
        "@graph": [
            {"@id": "schema:A", "@type": "rdfs:Class", "rdfs:label": "A", "rdfs:comment": "a class"},
            {"@id": "schema:b", "@type": "rdf:Property", "rdfs:label": "b", "rdfs:comment": "a property"},
        ]
    }
    vocab = parse_vocabulary(json.dumps(doc))
    index = index_build(vocab, Embedder(EmbedderConfig(dims=16)))
    assert len(index) == 2
    assert index.embedder_fingerprint == "baseline:sha256x8be-trigram-v1:d16"
    assert {e.kind for e in index.entries} == {TermKind.CLASS, TermKind.PROPERTY}


def test_snapshot_index_count_matches_parse_report(snapshot_vocab, snapshot_index):
    assert len(snapshot_index) == snapshot_vocab.report.active_count


def test_k_larger_than_index_returns_all_sorted():
    index = VectorIndex(
        [
            _entry("i:a", TermKind.CLASS, _unit(1.0)),
            _entry("i:b", TermKind.CLASS, _unit(0.0, 1.0)),
        ],
        dims=DIMS,
        embedder_fingerprint="fp",
    )
    result = index.top_k(_query(1.0), 10)
    assert [iri for iri, _ in result] == ["i:a", "i:b"]


def test_exact_tie_broken_by_iri_ascending():
    # Hand-computed cosines against query (1,0,...):
    #   i:a -> 1.0, i:z and i:m -> exactly 0.0 (orthogonal), tie on 0.0.
    index = VectorIndex(
        [
            _entry("i:z", TermKind.CLASS, _unit(0.0, 1.0)),
            _entry("i:a", TermKind.CLASS, _unit(1.0)),
            _entry("i:m", TermKind.CLASS, _unit(0.0, -1.0)),
        ],
        dims=DIMS,
        embedder_fingerprint="fp",
    )
    result = index.top_k(_query(1.0), 3)
    assert [iri for iri, _ in result] == ["i:a", "i:m", "i:z"]
    assert result[0][1] == pytest.approx(1.0)
    assert result[1][1] == 0.0 and result[2][1] == 0.0


def test_kind_filter_dispatches():
    index = VectorIndex(
        [
            _entry("i:class", TermKind.CLASS, _unit(1.0)),
            _entry("i:prop", TermKind.PROPERTY, _unit(1.0)),
        ],
        dims=DIMS,
        embedder_fingerprint="fp",
    )
    assert [i for i, _ in index.top_k(_query(1.0), 5, kind=TermKind.CLASS)] == ["i:class"]
    assert [i for i, _ in index.top_k(_query(1.0), 5, kind=TermKind.PROPERTY)] == ["i:prop"]


def test_matches_exhaustive_oracle_on_random_instances():
    rng = random.Random(99)
    for _ in range(20):
        index = _random_index(rng, rng.randint(1, 300))
        rows = _oracle_rows(index)
        for _ in range(5):
            query_values = [rng.uniform(-1, 1) for _ in range(DIMS)]
            k = rng.randint(1, 20)
            kind = rng.choice([None, "Class", "Property"])
            expected = oracle_top_k(rows, query_values, k, kind)
            got = index.top_k(
                EmbeddingVector(tuple(query_values)),
                k,
                kind=None if kind is None else TermKind(kind),
            )
            assert [iri for iri, _ in got] == [iri for iri, _ in expected]
            for (_, a), (_, b) in zip(got, expected):
                assert a == pytest.approx(b, abs=1e-9)


def test_top_k_deterministic_across_calls():
    rng = random.Random(3)
    index = _random_index(rng, 100)
    query = EmbeddingVector(tuple(rng.uniform(-1, 1) for _ in range(DIMS)))
    first = index.top_k(query, 10)
    for _ in range(5):
        assert index.top_k(query, 10) == first


def test_top_k_plus_one_extends_prefix():
    rng = random.Random(4)
    index = _random_index(rng, 50)
    query = EmbeddingVector(tuple(rng.uniform(-1, 1) for _ in range(DIMS)))
    for k in range(1, 20):
        assert index.top_k(query, k + 1)[:k] == index.top_k(query, k)


def test_zero_query_scores_zero_everywhere():
    rng = random.Random(8)
    index = _random_index(rng, 10)
    result = index.top_k(EmbeddingVector((0.0,) * DIMS), 10)
    assert all(score == 0.0 for _, score in result)
    assert [iri for iri, _ in result] == sorted(iri for iri, _ in result)


def test_dimension_mismatch_on_query():
    index = _random_index(random.Random(1), 5)
    with pytest.raises(DimensionMismatch):
        index.top_k(EmbeddingVector((1.0, 0.0)), 3)


def test_k_must_be_positive():
    index = _random_index(random.Random(1), 5)
    with pytest.raises(ValueError):
        index.top_k(_query(1.0), 0)


def test_duplicate_iri_rejected():
    with pytest.raises(CorruptIndexFile):
        VectorIndex(
            [_entry("i:a", TermKind.CLASS, _unit(1.0)), _entry("i:a", TermKind.CLASS, _unit(1.0))],
            dims=DIMS,
            embedder_fingerprint="fp",
        )


def test_save_load_empty_round_trip(tmp_path):
    index = VectorIndex([], dims=DIMS, embedder_fingerprint="fp:empty")
    path = index_save(index, tmp_path / "empty.swix")
    loaded = index_load(path)
    assert len(loaded) == 0
    assert loaded.dims == DIMS
    assert loaded.embedder_fingerprint == "fp:empty"


def test_save_load_round_trip_preserves_rankings(tmp_path):
    rng = random.Random(12)
    index = _random_index(rng, 100)
    path = index_save(index, tmp_path / "idx.swix")
    loaded = index_load(path)
    assert loaded.embedder_fingerprint == index.embedder_fingerprint
    for _ in range(10):
        query = EmbeddingVector(tuple(rng.uniform(-1, 1) for _ in range(DIMS)))
        a = index.top_k(query, 10)
        b = loaded.top_k(query, 10)
        assert [i for i, _ in a] == [i for i, _ in b]
        for (_, sa), (_, sb) in zip(a, b):
            assert sa == pytest.approx(sb, abs=1e-9)
    assert loaded.entries[0].rendered_text == index.entries[0].rendered_text


def test_truncated_file_is_corrupt(tmp_path):
    index = _random_index(random.Random(2), 10)
    path = index_save(index, tmp_path / "idx.swix")
    data = path.read_bytes()
    path.write_bytes(data[:-1])
    with pytest.raises(CorruptIndexFile):
        index_load(path)


def test_bad_magic_is_corrupt(tmp_path):
    index = _random_index(random.Random(2), 3)
    path = index_save(index, tmp_path / "idx.swix")
    data = bytearray(path.read_bytes())
    data[0] ^= 0xFF
    path.write_bytes(bytes(data))
    with pytest.raises(CorruptIndexFile):
        index_load(path)


def test_trailing_garbage_is_corrupt(tmp_path):
    index = _random_index(random.Random(2), 3)
    path = index_save(index, tmp_path / "idx.swix")
    path.write_bytes(path.read_bytes() + b"x")
    with pytest.raises(CorruptIndexFile):
        index_load(path)


def test_missing_file_is_corrupt(tmp_path):
    with pytest.raises(CorruptIndexFile):
        index_load(tmp_path / "nothing.swix")


def test_save_is_byte_deterministic(tmp_path):
    index = _random_index(random.Random(21), 50)
    a = index_save(index, tmp_path / "a.swix").read_bytes()
    b = index_save(index, tmp_path / "b.swix").read_bytes()
    assert a == b


def test_index_build_is_all_or_nothing(snapshot_vocab):
    class FlakyEmbedder:
        config = EmbedderConfig(dims=16)
        fingerprint = "flaky:fp"

        def __init__(self):
            self.calls = 0

        def embed(self, text):
            self.calls += 1
            if self.calls > 2:
                from semmap.errors import RemoteUnavailable

                raise RemoteUnavailable("endpoint went away")
            from semmap.embed import baseline_hash_embed

            return baseline_hash_embed(text, 16)

    from semmap.errors import RemoteUnavailable

    with pytest.raises(RemoteUnavailable):
        index_build(snapshot_vocab, FlakyEmbedder())
