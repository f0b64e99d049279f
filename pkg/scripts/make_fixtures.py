#!/usr/bin/env python3
"""Regenerate the moviedb fixture bundle.

Produces, under fixtures/:
  database/moviedb/moviedb.sqlite   3-table / 10-column sample database
  tables.json                       Spider-style schema manifest
  transcripts/moviedb.transcript.json  replay transcript for the agent flow
  golden/moviedb.mapping            golden mapping bundle (replay output)
  golden/moviedb.nt                 golden materialized triples
  eval/moviedb.gold                 hand-authored gold expectations

The transcript is recorded by running the real pipeline against scripted
responses whose term choices are drawn from actual retrieval candidates
(the script fails if an expected candidate stops being retrieved).
"""
from __future__ import annotations

import json
import sqlite3
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

sys.path.insert(0, str(ROOT / "src"))

from semmap.agents.backends import RecordingBackend, ReplayBackend, ScriptedBackend
from semmap.agents.pipeline import MapOptions, map_database, retrieve_candidates
from semmap.agents.prompts import FALLBACK_CLASS_IRI
from semmap.embed import Embedder, EmbedderConfig
from semmap.ingest import list_tables, open_database, profile_table
from semmap.kgbuild import assemble_mapping, materialize, serialize_mapping, serialize_ntriples
from semmap.vocab import load_vocabulary
from semmap.vstore import index_build

SCHEMA_NS = "https://schema.org/"
BASE_IRI = "http://example.org/data"

DB_SQL = """
CREATE TABLE directors (id INTEGER PRIMARY KEY, name TEXT, birth_year INTEGER);
CREATE TABLE movies (
    id INTEGER PRIMARY KEY,
    title TEXT,
    release_year INTEGER,
    director_id INTEGER REFERENCES directors(id)
);
CREATE TABLE reviews (
    id INTEGER PRIMARY KEY,
    movie_id INTEGER REFERENCES movies(id),
    rating REAL
);
INSERT INTO directors VALUES (1,'Nora Hale',1962),(2,'Satoshi Ode',1975),(3,'Lena Brandt',NULL);
INSERT INTO movies VALUES
    (1,'The Long Shore',1999,1),
    (2,'Glass Harbor',2011,2),
    (3,'Night Cartographer',NULL,2),
    (4,'Winter Index',2023,NULL);
INSERT INTO reviews VALUES (1,1,4.5),(2,1,3.0),(3,2,5.0),(4,3,4.0),(5,99,2.5);
"""

MANIFEST = [
    {
        "db_id": "moviedb",
        "table_names": ["directors", "movies", "reviews"],
        "table_names_original": ["directors", "movies", "reviews"],
        "column_names": [
            [-1, "*"],
            [0, "id"], [0, "name"], [0, "birth year"],
            [1, "id"], [1, "title"], [1, "release year"], [1, "director id"],
            [2, "id"], [2, "movie id"], [2, "rating"],
        ],
        "column_names_original": [
            [-1, "*"],
            [0, "id"], [0, "name"], [0, "birth_year"],
            [1, "id"], [1, "title"], [1, "release_year"], [1, "director_id"],
            [2, "id"], [2, "movie_id"], [2, "rating"],
        ],
        "column_types": ["text", "number", "text", "number", "number", "text", "number", "number", "number", "number", "number"],
        "primary_keys": [1, 4, 8],
        "foreign_keys": [[7, 1], [9, 4]],
    },
    {
        "db_id": "shop",
        "table_names": ["customers", "orders"],
        "table_names_original": ["customers", "orders"],
        "column_names": [[-1, "*"], [0, "id"], [0, "name"], [1, "customer id"], [1, "amount"]],
        "column_names_original": [[-1, "*"], [0, "id"], [0, "name"], [1, "customer_id"], [1, "amount"]],
        "column_types": ["text", "number", "text", "number", "number"],
        "primary_keys": [1],
        "foreign_keys": [[3, 1]],
    },
]

GOLD = {
    "db_id": "moviedb",
    "tables": {
        "directors": {
            "class": SCHEMA_NS + "Person",
            "columns": {
                "id": None,
                "name": SCHEMA_NS + "name",
                "birth_year": SCHEMA_NS + "birthDate",
            },
        },
        "movies": {
            "class": SCHEMA_NS + "Movie",
            "columns": {
                "id": None,
                "title": [SCHEMA_NS + "name", SCHEMA_NS + "title"],
                "release_year": [SCHEMA_NS + "copyrightYear", SCHEMA_NS + "datePublished"],
                "director_id": SCHEMA_NS + "director",
            },
        },
        "reviews": {
            "class": SCHEMA_NS + "Review",
            "columns": {
                "id": SCHEMA_NS + "identifier",
                "movie_id": None,
                "rating": SCHEMA_NS + "ratingValue",
            },
        },
    },
    "foreign_keys": [
        {"from_table": "movies", "from_column": "director_id", "to_table": "directors", "to_column": "id"},
        {"from_table": "reviews", "from_column": "movie_id", "to_table": "movies", "to_column": "id"},
    ],
}

# (class choice or fallback, {column: (preferred property or None, confidence)})
PLAN = {
    "directors": (
        None,  # fallback class; the validator re-maps it to Person
        "LOW",
        {
            "id": (None, "MEDIUM", "opaque surrogate key; no candidate fits"),
            "name": ("name", "HIGH", "person names map to the generic name property"),
            "birth_year": ("yearBuilt", "LOW", "year-like column; best available guess"),
        },
    ),
    "movies": (
        "Movie",
        "HIGH",
        {
            "id": (None, "MEDIUM", "opaque surrogate key; no candidate fits"),
            "title": ("name", "HIGH", "movie titles are the work's name"),
            "release_year": ("releaseDate", "MEDIUM", "release year approximates the release date"),
            "director_id": ("director", "HIGH", "references the movie's director"),
        },
    ),
    "reviews": (
        "Review",
        "HIGH",
        {
            "id": (None, "MEDIUM", "opaque surrogate key; no candidate fits"),
            "movie_id": (None, "MEDIUM", "join column; represented as a link instead"),
            "rating": ("ratingValue", "HIGH", "numeric rating score"),
        },
    ),
}

RELATION_RESPONSE = {
    "tables": [
        {"table": "directors", "primary_key": ["id"], "pk_absent": False},
        {"table": "movies", "primary_key": ["id"], "pk_absent": False},
        {"table": "reviews", "primary_key": ["id"], "pk_absent": False},
    ],
    "foreign_keys": [
        {"from_table": "movies", "from_column": "director_id", "to_table": "directors", "to_column": "id", "confidence": "HIGH"},
        {"from_table": "reviews", "from_column": "movie_id", "to_table": "movies", "to_column": "id", "confidence": "HIGH"},
    ],
    "confidence": "HIGH",
}

VALIDATOR_RESPONSE = {
    "edits": [
        {
            "kind": "Remap",
            "target": {"type": "table-class", "table": "directors"},
            "replacement": SCHEMA_NS + "Person",
        },
        {
            "kind": "Remap",
            "target": {"type": "column-property", "table": "directors", "column": "birth_year"},
            "replacement": SCHEMA_NS + "birthDate",
        },
        {
            "kind": "Keep",
            "target": {
                "type": "fk",
                "from_table": "reviews", "from_column": "movie_id",
                "to_table": "movies", "to_column": "id",
            },
        },
    ],
    "confidence": "HIGH",
}


def make_database() -> Path:
    db_dir = FIXTURES / "database" / "moviedb"
    db_dir.mkdir(parents=True, exist_ok=True)
    db_path = db_dir / "moviedb.sqlite"
    if db_path.exists():
        db_path.unlink()
    conn = sqlite3.connect(db_path)
    conn.executescript(DB_SQL)
    conn.commit()
    conn.close()
    return db_path


def build_mapping_responses(db_path: Path, index, embedder) -> list[str]:
    """Construct mapping-agent responses from real retrieval candidates."""
    db = open_database(db_path)
    responses = []
    try:
        for table in list_tables(db):
            profile = profile_table(db, table, k=5)
            candidates = retrieve_candidates(profile, index, embedder)
            class_local, class_conf, columns_plan = PLAN[table]
            if class_local is None:
                class_iri = FALLBACK_CLASS_IRI
            else:
                class_iri = SCHEMA_NS + class_local
                available = {c.iri for c in candidates.class_candidates}
                assert class_iri in available, f"{table}: {class_iri} not retrieved ({sorted(available)})"
            columns = []
            for column in [c.name for c in profile.columns]:
                prop_local, confidence, rationale = columns_plan[column]
                if prop_local is None:
                    prop_iri = None
                else:
                    prop_iri = SCHEMA_NS + prop_local
                    available = {c.iri for c in candidates.property_candidates[column]}
                    assert prop_iri in available, f"{table}.{column}: {prop_iri} not retrieved"
                columns.append(
                    {"column": column, "property_iri": prop_iri, "confidence": confidence, "rationale": rationale}
                )
            responses.append(
                json.dumps(
                    {
                        "table": table,
                        "class_iri": class_iri,
                        "class_confidence": class_conf,
                        "columns": columns,
                    }
                )
            )
    finally:
        db.close()
    return responses


def main() -> None:
    db_path = make_database()
    (FIXTURES / "tables.json").write_text(json.dumps(MANIFEST, indent=2) + "\n", encoding="utf-8")
    (FIXTURES / "eval").mkdir(parents=True, exist_ok=True)
    (FIXTURES / "eval" / "moviedb.gold").write_text(json.dumps(GOLD, indent=2) + "\n", encoding="utf-8")

    vocabulary = load_vocabulary(FIXTURES / "schemaorg" / "schemaorg-snapshot.jsonld")
    embedder = Embedder(EmbedderConfig())
    index = index_build(vocabulary, embedder)

    responses = build_mapping_responses(db_path, index, embedder)
    responses.append(json.dumps(RELATION_RESPONSE))
    responses.append(json.dumps(VALIDATOR_RESPONSE))

    recorder = RecordingBackend(ScriptedBackend(responses))
    result = map_database(recorder, embedder, index, db_path, MapOptions())
    transcript_path = FIXTURES / "transcripts" / "moviedb.transcript.json"
    recorder.save(transcript_path)

    mapping = assemble_mapping(
        result.validated_proposals,
        result.validated_relation,
        result.edits,
        result.profiles,
        db_id=result.db_id,
        vocabulary=vocabulary,
        final_confidence=result.final_confidence,
        confidence_status=result.confidence_status,
    )
    golden_dir = FIXTURES / "golden"
    golden_dir.mkdir(parents=True, exist_ok=True)
    (golden_dir / "moviedb.mapping").write_text(serialize_mapping(mapping), encoding="utf-8")

    materialized = materialize(db_path, mapping, BASE_IRI)
    (golden_dir / "moviedb.nt").write_text(serialize_ntriples(materialized.triples), encoding="utf-8")

    # Replay sanity check: the transcript must reproduce the bundle exactly.
    replay = ReplayBackend.from_file(transcript_path)
    replay_result = map_database(replay, embedder, index, db_path, MapOptions())
    replay_mapping = assemble_mapping(
        replay_result.validated_proposals,
        replay_result.validated_relation,
        replay_result.edits,
        replay_result.profiles,
        db_id=replay_result.db_id,
        vocabulary=vocabulary,
        final_confidence=replay_result.final_confidence,
        confidence_status=replay_result.confidence_status,
    )
    assert serialize_mapping(replay_mapping) == serialize_mapping(mapping), "replay diverged"

    print(f"final confidence: {result.final_confidence}, fk predicates: "
          f"{[l.predicate_iri for l in mapping.fk_links]}")
    print(f"triples={materialized.triple_count} dangling={materialized.dangling_fk_count} "
          f"unmapped_cols={materialized.unmapped_column_count}")
    print("fixtures regenerated")


if __name__ == "__main__":
    main()
