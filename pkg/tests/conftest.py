from __future__ import annotations

import sqlite3
from pathlib import Path

import pytest

from semmap.embed import Embedder, EmbedderConfig
from semmap.vocab import Vocabulary, load_vocabulary
from semmap.vstore import VectorIndex, index_build

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"
SNAPSHOT = FIXTURES / "schemaorg" / "schemaorg-snapshot.jsonld"
MOVIEDB = FIXTURES / "database" / "moviedb" / "moviedb.sqlite"
MANIFEST = FIXTURES / "tables.json"
TRANSCRIPT = FIXTURES / "transcripts" / "moviedb.transcript.json"
GOLDEN = FIXTURES / "golden"
GOLD_DIR = FIXTURES / "eval"


@pytest.fixture(scope="session")
def snapshot_vocab() -> Vocabulary:
    return load_vocabulary(SNAPSHOT)


@pytest.fixture(scope="session")
def baseline_embedder() -> Embedder:
    return Embedder(EmbedderConfig())


@pytest.fixture(scope="session")
def snapshot_index(snapshot_vocab, baseline_embedder) -> VectorIndex:
    return index_build(snapshot_vocab, baseline_embedder)


@pytest.fixture()
def make_db(tmp_path):
    """Create a throwaway SQLite database from a SQL script."""

    def _make(sql: str, name: str = "scratch.sqlite") -> Path:
        path = tmp_path / name
        conn = sqlite3.connect(path)
        conn.executescript(sql)
        conn.commit()
        conn.close()
        return path

    return _make
