"""Acceptance gate: one test per release criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Everything here is seeded and offline.
"""
from __future__ import annotations

import hashlib
import json
import random
import time

import numpy as np
import pytest

from semmap import cli
from semmap.agents.backends import RecordingBackend, ReplayBackend, ScriptedBackend
from semmap.agents.pipeline import (
    ConfidenceClass,
    aggregate_confidence,
    map_database,
    run_mapping_agent,
)
from semmap.embed import EmbeddingVector
from semmap.errors import AgentOutputInvalid, CorruptIndexFile, EmptyInput
from semmap.evalharness import EvalReport, compare, format_percent
from semmap.kgbuild import (
    assemble_mapping,
    materialize,
    parse_ntriples,
    serialize_mapping,
    serialize_ntriples,
)
from semmap.vocab import TermKind, build_subgraph
from semmap.vstore import IndexEntry, VectorIndex, index_load, index_save

from .conftest import GOLDEN, MOVIEDB, SNAPSHOT, TRANSCRIPT
from .oracles import oracle_top_k
from .test_agents import _candidates_for, _valid_mapping_response, _widget_profile
from .test_evalharness import _gold, _mapping
from .test_kgbuild import _random_database_and_mapping, _sql_count_oracle

H, M, L = ConfidenceClass.HIGH, ConfidenceClass.MEDIUM, ConfidenceClass.LOW
NS = "https://schema.org/"


def _report(name: str) -> None:
    print(f"ACCEPTANCE PASS: {name}")


def _random_entries(rng: random.Random, count: int, dims: int, tie_fraction: float = 0.0):
    entries = []
    for i in range(count):
        kind = TermKind.CLASS if rng.random() < 0.5 else TermKind.PROPERTY
        if tie_fraction and entries and rng.random() < tie_fraction:
            donor = rng.choice(entries)  # exact duplicate vector forces score ties
            values = donor.vector.copy()
            kind = donor.kind
        else:
            values = np.asarray([rng.uniform(-1, 1) for _ in range(dims)], dtype=np.float32)
        entries.append(
            IndexEntry(iri=f"urn:t{i:05d}", kind=kind, vector=values, rendered_text=f"t{i}")
        )
    return entries


def test_criterion_vector_store_oracle_equivalence():
    started = time.perf_counter()
    rng = random.Random(20240601)
    dims = 16
    instances = [(rng.randint(10, 800), rng.randint(1, 20)) for _ in range(47)]
    instances += [(5000, 30), (2000, 50), (10000, 100)]
    assert len(instances) == 50

    for instance_no, (count, query_count) in enumerate(instances):
        tie_fraction = 0.1 if instance_no % 5 == 0 else 0.0
        entries = _random_entries(rng, count, dims, tie_fraction)
        index = VectorIndex(entries, dims=dims, embedder_fingerprint="acc:fp")
        rows = [(e.iri, e.kind.value, [float(x) for x in e.vector]) for e in index.entries]
        for _ in range(query_count):
            query_values = [rng.uniform(-1, 1) for _ in range(dims)]
            k = rng.randint(1, 25)
            kind = rng.choice([None, "Class", "Property"])
            expected = oracle_top_k(rows, query_values, k, kind)
            got = index.top_k(
                EmbeddingVector(tuple(query_values)),
                k,
                kind=None if kind is None else TermKind(kind),
            )
            assert [iri for iri, _ in got] == [iri for iri, _ in expected], (
                f"instance {instance_no} diverged from the exhaustive oracle"
            )
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0, f"oracle-equivalence sweep took {elapsed:.1f}s"
    _report(f"vector-store oracle equivalence (50 instances, {elapsed:.1f}s)")


def test_criterion_persistence_fidelity(tmp_path):
    rng = random.Random(7777)
    entries = _random_entries(rng, 1000, 32)
    index = VectorIndex(entries, dims=32, embedder_fingerprint="acc:persist")
    path = index_save(index, tmp_path / "persist.swix")
    loaded = index_load(path)
    for _ in range(100):
        query = EmbeddingVector(tuple(rng.uniform(-1, 1) for _ in range(32)))
        k = rng.randint(1, 50)
        a = index.top_k(query, k)
        b = loaded.top_k(query, k)
        assert [iri for iri, _ in a] == [iri for iri, _ in b]
        for (_, sa), (_, sb) in zip(a, b):
            assert abs(sa - sb) <= 1e-9
    data = path.read_bytes()
    path.write_bytes(data[:-1])
    with pytest.raises(CorruptIndexFile):
        index_load(path)
    _report("persistence fidelity (1000 entries, 100 queries, truncation detected)")


def test_criterion_vocabulary_self_retrieval(snapshot_vocab, baseline_embedder):
    from semmap.vstore import index_build

    started = time.perf_counter()  # budget covers index build plus the queries
    index = index_build(snapshot_vocab, baseline_embedder)
    rng = random.Random(424242)
    terms = snapshot_vocab.active_terms()
    sample = rng.sample(terms, 50)
    rank_one = 0
    for term in sample:
        subgraph = build_subgraph(term, snapshot_vocab)
        query = baseline_embedder.embed(subgraph.rendered_text)
        top = index.top_k(query, 1, kind=term.kind)
        if top and top[0][0] == term.iri:
            rank_one += 1
    elapsed = time.perf_counter() - started
    assert rank_one >= 48, f"only {rank_one}/50 terms self-retrieved at rank 1"  # >= 95%
    assert elapsed < 60.0
    _report(f"vocabulary self-retrieval ({rank_one}/50 at rank 1, build+queries {elapsed:.1f}s)")


def test_criterion_end_to_end_replay_determinism(snapshot_vocab, snapshot_index, baseline_embedder):
    golden = (GOLDEN / "moviedb.mapping").read_bytes()
    bundles = []
    for _ in range(3):
        backend = ReplayBackend.from_file(TRANSCRIPT)
        result = map_database(backend, baseline_embedder, snapshot_index, MOVIEDB)
        mapping = assemble_mapping(
            result.validated_proposals,
            result.validated_relation,
            result.edits,
            result.profiles,
            db_id=result.db_id,
            vocabulary=snapshot_vocab,
            final_confidence=result.final_confidence,
            confidence_status=result.confidence_status,
        )
        bundles.append(serialize_mapping(mapping).encode("utf-8"))
    assert bundles[0] == bundles[1] == bundles[2] == golden
    assert (result.timing.tables, result.timing.columns) == (3, 10)
    _report("end-to-end replay determinism (3 runs byte-identical to golden)")


def test_criterion_eval_arithmetic():
    from fractions import Fraction

    columns = [(f"c{i:02d}", NS + "name", H) for i in range(46)]
    mapping = _mapping([("t", NS + "Thing", H, columns)])
    gold_columns = [(f"c{i:02d}", (NS + "name",) if i < 36 else (NS + "other",)) for i in range(46)]
    gold = _gold([("t", (NS + "Thing",), gold_columns)])
    report = compare(mapping, gold)
    assert report.total == 47 and report.correct == 37
    assert report.overall_accuracy == Fraction(37, 47)
    assert format_percent(report.overall_accuracy) == "78.72"

    rng = random.Random(31337)
    for _ in range(200):
        synthetic = EvalReport()
        for bucket in synthetic.by_confidence.values():
            bucket.total = rng.randint(0, 25)
            bucket.correct = rng.randint(0, bucket.total) if bucket.total else 0
        synthetic.total = sum(b.total for b in synthetic.by_confidence.values())
        synthetic.correct = sum(b.correct for b in synthetic.by_confidence.values())
        if synthetic.total == 0:
            assert synthetic.overall_accuracy is None
            continue
        weighted = sum(
            (b.accuracy() or Fraction(0)) * b.total for b in synthetic.by_confidence.values()
        ) / synthetic.total
        assert synthetic.overall_accuracy == weighted  # exact rational equality
    _report("eval arithmetic (37/47 -> 78.72, weighted-mean exact on 200 reports)")


def test_criterion_confidence_aggregation():
    assert aggregate_confidence([H, H, H]) is H
    assert aggregate_confidence([H, L]) is M
    assert aggregate_confidence([M, L, L]) is L
    rng = random.Random(90210)
    values = [H, M, L]
    for _ in range(1000):
        items = [rng.choice(values) for _ in range(rng.randint(1, 15))]
        shuffled = items[:]
        rng.shuffle(shuffled)
        assert aggregate_confidence(items) is aggregate_confidence(shuffled)
        if len(set(items)) == 1:
            assert aggregate_confidence(items) is items[0]
    for value in values:
        assert aggregate_confidence([value] * 9) is value
    with pytest.raises(EmptyInput):
        aggregate_confidence([])
    _report("confidence aggregation (worked examples + 1000 random lists)")


def test_criterion_materialization_count_formula(tmp_path):
    rng = random.Random(5150)
    for case in range(100):
        path, mapping = _random_database_and_mapping(rng, tmp_path, case)
        result = materialize(path, mapping, "http://acc.base")
        assert result.triple_count == _sql_count_oracle(path, mapping), f"case {case}"
        reparsed = parse_ntriples(serialize_ntriples(result.triples))
        assert sorted(reparsed.triples, key=str) == sorted(result.triples.triples, key=str)
    _report("materialization count formula (100 randomized databases + reparse)")


def test_criterion_agent_robustness(make_db, tmp_path):
    profile = _widget_profile(make_db)
    candidates = _candidates_for(profile)

    # Record a malformed-then-valid exchange, then replay it from the file.
    recorder = RecordingBackend(ScriptedBackend(["{ not json", _valid_mapping_response(profile)]))
    recorded = run_mapping_agent(recorder, profile, candidates)
    assert recorded.retry_count == 1
    transcript = recorder.save(tmp_path / "retry.transcript.json")
    replay = ReplayBackend.from_file(transcript)
    replayed = run_mapping_agent(replay, profile, candidates)
    assert replayed.retry_count == 1
    assert replayed == recorded

    triple_bad = ScriptedBackend(["nope", "still nope", "nope again"])
    with pytest.raises(AgentOutputInvalid):
        run_mapping_agent(triple_bad, profile, candidates, retry_budget=3)
    assert len(triple_bad.calls) == 3

    rogue = json.loads(_valid_mapping_response(profile))
    rogue["columns"][0]["property_iri"] = "https://example.org/vocab/not-a-candidate"
    corrective = ScriptedBackend([json.dumps(rogue), _valid_mapping_response(profile)])
    proposal = run_mapping_agent(corrective, profile, candidates)
    assert proposal.retry_count == 1
    assert len(corrective.calls) == 2  # exactly one corrective retry
    assert "not-a-candidate" in corrective.calls[1]["messages"][-1][1]
    _report("agent robustness (retry once, budget exhaustion, candidate enforcement)")


def test_criterion_read_only_guarantee(tmp_path):
    before = hashlib.sha256(MOVIEDB.read_bytes()).hexdigest()
    out_dir = tmp_path / "out"
    index_path = tmp_path / "acc.swix"
    config = {
        "vocabulary": str(SNAPSHOT),
        "index": str(index_path),
        "embedder": {"backend": "baseline", "dims": 512},
        "chat": {"mode": "replay", "transcript": str(TRANSCRIPT)},
        "out_dir": str(out_dir),
        "gold_dir": str(MOVIEDB.parent.parent.parent / "eval"),
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    assert cli.main(["--config", str(config_path), "build-index"]) == 0
    assert cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB), "--materialize"]) == 0
    assert cli.main(["--config", str(config_path), "eval", "--db", str(MOVIEDB)]) == 0
    after = hashlib.sha256(MOVIEDB.read_bytes()).hexdigest()
    assert after == before
    _report("read-only guarantee (database hash unchanged through full pipeline)")
