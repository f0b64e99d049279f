from __future__ import annotations

import json
import random
import sqlite3

import pytest

from semmap.agents.pipeline import (
    ColumnMapping,
    ConfidenceClass,
    ForeignKeyEdge,
    MappingProposal,
    RelationProposal,
)
from semmap.errors import InconsistentInputs
from semmap.ingest import open_database, profile_table
from semmap.kgbuild import (
    EX_NS,
    RDF_TYPE,
    XSD_NS,
    ColumnLink,
    FkLink,
    Literal,
    SchemaMapping,
    TableMapping,
    Triple,
    TripleSet,
    assemble_mapping,
    load_mapping,
    mapping_from_document,
    mapping_to_document,
    materialize,
    parse_ntriples,
    serialize_mapping,
    serialize_ntriples,
)

from .conftest import GOLDEN, MOVIEDB

H, M, L = ConfidenceClass.HIGH, ConfidenceClass.MEDIUM, ConfidenceClass.LOW
NS = "https://schema.org/"


def _proposal(table, class_iri, columns):
    return MappingProposal(
        table=table,
        class_iri=class_iri,
        class_confidence=H,
        columns=tuple(ColumnMapping(c, iri, H) for c, iri in columns),
    )


def _relation(primary_keys, edges=()):
    return RelationProposal(
        primary_keys=primary_keys,
        pk_absent=(),
        foreign_keys=tuple(
            ForeignKeyEdge(*endpoints, confidence=H) for endpoints in edges
        ),
        confidence=H,
    )


def _profiles(path, tables):
    db = open_database(path)
    try:
        return {t: profile_table(db, t, k=0) for t in tables}
    finally:
        db.close()


# --- assembly -------------------------------------------------------------------

def test_assemble_mirrors_proposals_without_fks_or_edits(make_db):
    path = make_db("CREATE TABLE t (a INTEGER, b TEXT);")
    profiles = _profiles(path, ["t"])
    proposals = {"t": _proposal("t", NS + "Thing", [("a", NS + "identifier"), ("b", None)])}
    mapping = assemble_mapping(proposals, _relation({"t": ("a",)}), None, profiles, db_id="x")
    assert mapping.db_id == "x"
    table = mapping.table("t")
    assert table.class_iri == NS + "Thing"
    assert table.primary_key == ("a",)
    assert [(c.name, c.property_iri) for c in table.columns] == [("a", NS + "identifier"), ("b", None)]
    assert mapping.fk_links == ()


def test_assemble_rejects_table_mismatch(make_db):
    path = make_db("CREATE TABLE t (a INTEGER);")
    profiles = _profiles(path, ["t"])
    proposals = {"other": _proposal("other", NS + "Thing", [("a", None)])}
    with pytest.raises(InconsistentInputs):
        assemble_mapping(proposals, None, None, profiles)


def test_assemble_rejects_column_mismatch(make_db):
    path = make_db("CREATE TABLE t (a INTEGER);")
    profiles = _profiles(path, ["t"])
    proposals = {"t": _proposal("t", NS + "Thing", [("ghost", None)])}
    with pytest.raises(InconsistentInputs):
        assemble_mapping(proposals, None, None, profiles)


def test_fk_predicate_reuses_property_with_class_range(make_db, snapshot_vocab):
    path = make_db(
        "CREATE TABLE movies (id INTEGER, director_id INTEGER);"
        "CREATE TABLE directors (id INTEGER);"
    )
    profiles = _profiles(path, ["movies", "directors"])
    proposals = {
        "movies": _proposal("movies", NS + "Movie", [("id", None), ("director_id", NS + "director")]),
        "directors": _proposal("directors", NS + "Person", [("id", None)]),
    }
    relation = _relation(
        {"movies": ("id",), "directors": ("id",)},
        edges=[("movies", "director_id", "directors", "id")],
    )
    mapping = assemble_mapping(proposals, relation, None, profiles, vocabulary=snapshot_vocab)
    assert mapping.fk_links[0].predicate_iri == NS + "director"


def test_fk_predicate_falls_back_for_unmapped_column(make_db, snapshot_vocab):
    path = make_db("CREATE TABLE a (ref INTEGER); CREATE TABLE b (id INTEGER);")
    profiles = _profiles(path, ["a", "b"])
    proposals = {
        "a": _proposal("a", NS + "Thing", [("ref", None)]),
        "b": _proposal("b", NS + "Thing", [("id", None)]),
    }
    relation = _relation({"a": (), "b": ("id",)}, edges=[("a", "ref", "b", "id")])
    mapping = assemble_mapping(proposals, relation, None, profiles, vocabulary=snapshot_vocab)
    assert mapping.fk_links[0].predicate_iri == EX_NS + "ref_ref"


def test_fk_predicate_falls_back_for_datatype_range_property(make_db, snapshot_vocab):
    # schema:name ranges over Text only, so it cannot serve as a link predicate.
    path = make_db("CREATE TABLE a (n TEXT); CREATE TABLE b (id INTEGER);")
    profiles = _profiles(path, ["a", "b"])
    proposals = {
        "a": _proposal("a", NS + "Thing", [("n", NS + "name")]),
        "b": _proposal("b", NS + "Thing", [("id", None)]),
    }
    relation = _relation({"a": (), "b": ("id",)}, edges=[("a", "n", "b", "id")])
    mapping = assemble_mapping(proposals, relation, None, profiles, vocabulary=snapshot_vocab)
    assert mapping.fk_links[0].predicate_iri == EX_NS + "ref_n"


def test_fk_predicate_without_vocabulary_uses_fallback(make_db):
    path = make_db("CREATE TABLE a (x INTEGER); CREATE TABLE b (id INTEGER);")
    profiles = _profiles(path, ["a", "b"])
    proposals = {
        "a": _proposal("a", NS + "Thing", [("x", NS + "director")]),
        "b": _proposal("b", NS + "Thing", [("id", None)]),
    }
    relation = _relation({"a": (), "b": ("id",)}, edges=[("a", "x", "b", "id")])
    mapping = assemble_mapping(proposals, relation, None, profiles, vocabulary=None)
    assert mapping.fk_links[0].predicate_iri == EX_NS + "ref_x"


# --- materialization ----------------------------------------------------------------

def _single_table_mapping(columns, pk=("id",), class_iri=NS + "Thing", fk_links=()):
    return SchemaMapping(
        db_id="scratch",
        tables=(
            TableMapping(
                name="t",
                class_iri=class_iri,
                class_confidence=H,
                primary_key=tuple(pk),
                columns=tuple(ColumnLink(name, iri, H) for name, iri in columns),
            ),
        ),
        fk_links=tuple(fk_links),
        final_confidence=H,
        confidence_status="OK",
    )


def test_materialize_empty_table_emits_nothing(make_db):
    path = make_db("CREATE TABLE t (id INTEGER, v TEXT);")
    mapping = _single_table_mapping([("id", None), ("v", NS + "name")])
    result = materialize(path, mapping, "http://ex.base")
    assert result.triple_count == 0
    assert result.triples.triples == ()


def test_materialize_one_row_two_mapped_columns_three_triples(make_db):
    path = make_db("CREATE TABLE t (id INTEGER, v TEXT, w INTEGER); INSERT INTO t VALUES (7, 'x', 3);")
    mapping = _single_table_mapping([("id", None), ("v", NS + "name"), ("w", NS + "position")])
    result = materialize(path, mapping, "http://ex.base")
    assert result.triple_count == 3
    subjects = {t.subject for t in result.triples.triples}
    assert subjects == {"http://ex.base/t/7"}
    predicates = sorted(t.predicate for t in result.triples.triples)
    assert predicates == [RDF_TYPE, NS + "name", NS + "position"]


def test_materialize_skips_null_values(make_db):
    path = make_db("CREATE TABLE t (id INTEGER, v TEXT); INSERT INTO t VALUES (1, NULL);")
    mapping = _single_table_mapping([("id", None), ("v", NS + "name")])
    result = materialize(path, mapping, "http://ex.base")
    assert result.triple_count == 1  # type triple only


def test_materialize_dangling_fk_skipped_and_counted(make_db):
    path = make_db(
        "CREATE TABLE t (id INTEGER, ref INTEGER); CREATE TABLE u (id INTEGER);"
        "INSERT INTO t VALUES (1, 5),(2, NULL),(3, 9); INSERT INTO u VALUES (5);"
    )
    mapping = SchemaMapping(
        db_id="scratch",
        tables=(
            TableMapping("t", NS + "Thing", H, ("id",), (ColumnLink("id", None, H), ColumnLink("ref", None, H))),
            TableMapping("u", NS + "Thing", H, ("id",), (ColumnLink("id", None, H),)),
        ),
        fk_links=(FkLink("t", "ref", "u", "id", EX_NS + "ref_ref", H),),
        final_confidence=H,
        confidence_status="OK",
    )
    result = materialize(path, mapping, "http://ex.base")
    object_triples = [t for t in result.triples.triples if t.predicate == EX_NS + "ref_ref"]
    assert len(object_triples) == 1
    assert object_triples[0].obj == "http://ex.base/u/5"
    assert result.dangling_fk_count == 1  # ref=9 has no target; NULL is not dangling


def test_materialize_null_pk_gets_row_ordinal_surrogate(make_db):
    path = make_db("CREATE TABLE t (id INTEGER, v TEXT); INSERT INTO t VALUES (NULL,'a'),(2,'b');")
    mapping = _single_table_mapping([("id", None), ("v", NS + "name")])
    result = materialize(path, mapping, "http://ex.base")
    subjects = sorted({t.subject for t in result.triples.triples})
    assert subjects == ["http://ex.base/t/2", "http://ex.base/t/row1"]


def test_materialize_table_without_pk_uses_surrogates(make_db):
    path = make_db("CREATE TABLE t (v TEXT); INSERT INTO t VALUES ('a'),('b');")
    mapping = _single_table_mapping([("v", NS + "name")], pk=())
    result = materialize(path, mapping, "http://ex.base")
    subjects = sorted({t.subject for t in result.triples.triples})
    assert subjects == ["http://ex.base/t/row1", "http://ex.base/t/row2"]


def test_materialize_composite_pk_percent_encoded_and_joined(make_db):
    path = make_db(
        "CREATE TABLE t (a TEXT, b TEXT, v TEXT);"
        "INSERT INTO t VALUES ('x y', 'p/q', 'val');"
    )
    mapping = _single_table_mapping([("a", None), ("b", None), ("v", NS + "name")], pk=("a", "b"))
    result = materialize(path, mapping, "http://ex.base")
    subject = result.triples.triples[0].subject
    assert subject == "http://ex.base/t/x%20y_p%2Fq"


def test_materialize_literal_datatypes_follow_inferred_types(make_db):
    path = make_db(
        "CREATE TABLE t (id INTEGER, i INTEGER, r REAL, d TEXT, b BOOLEAN, s TEXT);"
        "INSERT INTO t VALUES (1, 42, 1.5, '2024-03-01', 1, 'plain');"
    )
    mapping = _single_table_mapping(
        [
            ("id", None),
            ("i", NS + "position"),
            ("r", NS + "ratingValue"),
            ("d", NS + "birthDate"),
            ("b", NS + "isGift"),
            ("s", NS + "name"),
        ]
    )
    result = materialize(path, mapping, "http://ex.base")
    literals = {t.predicate: t.obj for t in result.triples.triples if isinstance(t.obj, Literal)}
    assert literals[NS + "position"] == Literal("42", XSD_NS + "integer")
    assert literals[NS + "ratingValue"] == Literal("1.5", XSD_NS + "double")
    assert literals[NS + "birthDate"] == Literal("2024-03-01", XSD_NS + "date")
    assert literals[NS + "isGift"] == Literal("true", XSD_NS + "boolean")
    assert literals[NS + "name"] == Literal("plain", None)


def test_materialize_counts_unmapped_columns(make_db):
    path = make_db("CREATE TABLE t (id INTEGER, v TEXT); INSERT INTO t VALUES (1, 'x');")
    mapping = _single_table_mapping([("id", None), ("v", NS + "name")])
    assert materialize(path, mapping, "http://ex.base").unmapped_column_count == 1


def test_materialize_moviedb_matches_golden(snapshot_vocab):
    mapping = load_mapping(GOLDEN / "moviedb.mapping")
    result = materialize(MOVIEDB, mapping, "http://example.org/data")
    assert serialize_ntriples(result.triples) == (GOLDEN / "moviedb.nt").read_text()
    assert result.dangling_fk_count == 1
    assert result.unmapped_column_count == 4


def test_materialize_is_deterministic(make_db):
    path = make_db("CREATE TABLE t (id INTEGER, v TEXT); INSERT INTO t VALUES (1,'a'),(2,'b');")
    mapping = _single_table_mapping([("id", None), ("v", NS + "name")])
    a = serialize_ntriples(materialize(path, mapping, "http://ex.base").triples)
    b = serialize_ntriples(materialize(path, mapping, "http://ex.base").triples)
    assert a == b


def _sql_count_oracle(path, mapping) -> int:
    """Independent count: SQL aggregates instead of the materializer."""
    conn = sqlite3.connect(path)
    try:
        expected = 0
        for table in mapping.tables:
            rows = conn.execute(f'SELECT COUNT(*) FROM "{table.name}"').fetchone()[0]
            expected += rows  # one type triple per row
            for link in table.columns:
                if link.property_iri is not None:
                    expected += conn.execute(
                        f'SELECT COUNT("{link.name}") FROM "{table.name}"'
                    ).fetchone()[0]
        for fk in mapping.fk_links:
            expected += conn.execute(
                f'SELECT COUNT(*) FROM "{fk.from_table}" f WHERE f."{fk.from_column}" IS NOT NULL '
                f'AND EXISTS (SELECT 1 FROM "{fk.to_table}" t WHERE t."{fk.to_column}" = f."{fk.from_column}")'
            ).fetchone()[0]
        return expected
    finally:
        conn.close()


def _random_database_and_mapping(rng: random.Random, tmp_path, case: int):
    table_count = rng.randint(1, 3)
    tables = []
    statements = []
    for t in range(table_count):
        name = f"t{t}"
        column_count = rng.randint(1, 4)
        columns = [(f"c{i}", rng.choice(["INTEGER", "REAL", "TEXT"])) for i in range(column_count)]
        statements.append(
            f"CREATE TABLE {name} (" + ", ".join(f"{c} {ctype}" for c, ctype in columns) + ");"
        )
        rows = rng.randint(0, 12)
        for _ in range(rows):
            values = []
            for _, ctype in columns:
                if rng.random() < 0.2:
                    values.append("NULL")
                elif ctype == "INTEGER":
                    values.append(str(rng.randint(0, 6)))
                elif ctype == "REAL":
                    values.append(str(round(rng.uniform(0, 9), 3)))
                else:
                    values.append(f"'v{rng.randint(0, 9)}'")
            statements.append(f"INSERT INTO {name} VALUES ({', '.join(values)});")
        tables.append((name, columns, rows))

    path = tmp_path / f"case{case}.sqlite"
    conn = sqlite3.connect(path)
    conn.executescript("\n".join(statements))
    conn.commit()
    conn.close()

    table_mappings = []
    for name, columns, _ in tables:
        links = tuple(
            ColumnLink(c, NS + "name" if rng.random() < 0.6 else None, H) for c, _ in columns
        )
        pk = (columns[0][0],) if rng.random() < 0.7 else ()
        table_mappings.append(TableMapping(name, NS + "Thing", H, pk, links))

    fk_links = []
    int_columns = [
        (name, c) for name, columns, _ in tables for c, ctype in columns if ctype == "INTEGER"
    ]
    if len(int_columns) >= 2 and rng.random() < 0.8:
        for _ in range(rng.randint(1, 2)):
            (ft, fc), (tt, tc) = rng.sample(int_columns, 2)
            fk_links.append(FkLink(ft, fc, tt, tc, EX_NS + f"ref_{fc}", H))

    mapping = SchemaMapping(
        db_id=f"case{case}",
        tables=tuple(table_mappings),
        fk_links=tuple(fk_links),
        final_confidence=H,
        confidence_status="OK",
    )
    return path, mapping


def test_triple_count_formula_on_randomized_databases(tmp_path):
    rng = random.Random(2024)
    for case in range(25):
        path, mapping = _random_database_and_mapping(rng, tmp_path, case)
        result = materialize(path, mapping, "http://ex.base")
        assert result.triple_count == _sql_count_oracle(path, mapping)
        reparsed = parse_ntriples(serialize_ntriples(result.triples))
        assert sorted(reparsed.triples, key=str) == sorted(result.triples.triples, key=str)


# --- N-Triples -----------------------------------------------------------------------

def test_serialize_empty_set_is_empty_text():
    assert serialize_ntriples(TripleSet(())) == ""


def test_serialize_single_triple_golden_line():
    ts = TripleSet((Triple("http://ex.org/s", "http://ex.org/p", Literal("v")),))
    assert serialize_ntriples(ts) == '<http://ex.org/s> <http://ex.org/p> "v" .\n'


def test_serialize_escapes_quote_newline_and_friends():
    # Hand-applied escaping rules: " -> \",  newline -> \n, tab -> \t, \ -> \\.
    ts = TripleSet(
        (Triple("http://ex.org/s", "http://ex.org/p", Literal('say "hi"\nnext\tcol\\end')),)
    )
    assert serialize_ntriples(ts) == (
        '<http://ex.org/s> <http://ex.org/p> "say \\"hi\\"\\nnext\\tcol\\\\end" .\n'
    )


def test_serialize_sorts_lines():
    ts = TripleSet(
        (
            Triple("http://ex.org/b", "http://ex.org/p", "http://ex.org/o"),
            Triple("http://ex.org/a", "http://ex.org/q", Literal("2")),
            Triple("http://ex.org/a", "http://ex.org/p", Literal("1")),
        )
    )
    lines = serialize_ntriples(ts).splitlines()
    assert lines == sorted(lines)
    assert lines[0].startswith("<http://ex.org/a> <http://ex.org/p>")


def test_parse_round_trip_with_datatypes_and_escapes():
    ts = TripleSet(
        (
            Triple("http://ex.org/s", "http://ex.org/p", Literal("42", XSD_NS + "integer")),
            Triple("http://ex.org/s", "http://ex.org/q", Literal('quote " and \n break')),
            Triple("http://ex.org/s", "http://ex.org/r", "http://ex.org/o"),
        )
    )
    parsed = parse_ntriples(serialize_ntriples(ts))
    assert sorted(parsed.triples, key=str) == sorted(ts.triples, key=str)


def test_parse_rejects_malformed_line():
    with pytest.raises(ValueError):
        parse_ntriples("this is not a triple line\n")


def test_control_character_escaped_as_unicode():
    ts = TripleSet((Triple("http://ex.org/s", "http://ex.org/p", Literal("bell\x07")),))
    text = serialize_ntriples(ts)
    assert "\\u0007" in text
    assert parse_ntriples(text).triples[0].obj == Literal("bell\x07")


# --- mapping document -----------------------------------------------------------------

def test_mapping_document_round_trip():
    mapping = load_mapping(GOLDEN / "moviedb.mapping")
    doc = mapping_to_document(mapping)
    assert mapping_from_document(doc) == mapping
    assert json.loads(serialize_mapping(mapping)) == doc
