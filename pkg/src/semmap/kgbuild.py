"""Final mapping assembly and knowledge-graph materialization.

Assembles validated stage outputs into one :class:`SchemaMapping`, turns
database rows into triples under a stable subject-IRI scheme
(``base/<table>/<percent-encoded pk>``), and serializes canonical
N-Triples: one sorted line per triple, byte-deterministic.
"""
from __future__ import annotations

import json
import re
import sqlite3
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import quote

from .agents.pipeline import (
    ConfidenceClass,
    MappingProposal,
    RelationProposal,
    ValidationEdits,
)
from .agents.prompts import PROMPT_VERSIONS
from .errors import InconsistentInputs
from .ingest import TableProfile, _quote_ident, open_database, profile_table
from .vocab import DATATYPE_IRIS, TermKind, Vocabulary

_PROMPT_VERSION_LINE = "prompts: " + ",".join(
    PROMPT_VERSIONS[role] for role in sorted(PROMPT_VERSIONS)
)

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
EX_NS = "http://example.org/semmap#"

_XSD_BY_TYPE = {
    "Integer": XSD_NS + "integer",
    "Real": XSD_NS + "double",
    "Date": XSD_NS + "date",
    "Boolean": XSD_NS + "boolean",
}

MAPPING_DOCUMENT_VERSION = 1


@dataclass(frozen=True)
class ColumnLink:
    name: str
    property_iri: str | None
    confidence: ConfidenceClass


@dataclass(frozen=True)
class TableMapping:
    name: str
    class_iri: str
    class_confidence: ConfidenceClass
    primary_key: tuple[str, ...]
    columns: tuple[ColumnLink, ...]


@dataclass(frozen=True)
class FkLink:
    from_table: str
    from_column: str
    to_table: str
    to_column: str
    predicate_iri: str
    confidence: ConfidenceClass


@dataclass(frozen=True)
class SchemaMapping:
    db_id: str
    tables: tuple[TableMapping, ...]
    fk_links: tuple[FkLink, ...]
    final_confidence: ConfidenceClass | None
    confidence_status: str
    provenance: tuple[str, ...] = ()

    def table(self, name: str) -> TableMapping:
        found = next((t for t in self.tables if t.name == name), None)
        if found is None:
            raise InconsistentInputs(f"mapping has no table {name!r}")
        return found


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: str | None = None


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    obj: str | Literal  # plain str means an IRI object


@dataclass(frozen=True)
class TripleSet:
    triples: tuple[Triple, ...]


@dataclass(frozen=True)
class MaterializeResult:
    triples: TripleSet
    triple_count: int
    dangling_fk_count: int
    unmapped_column_count: int


def _ref_predicate(from_column: str) -> str:
    return EX_NS + "ref_" + quote(from_column, safe="")


def _property_has_class_range(property_iri: str, vocabulary: Vocabulary | None) -> bool:
    if vocabulary is None:
        return False
    record = vocabulary.get(property_iri)
    if record is None:
        return False
    for range_iri in record.range_includes:
        if range_iri in DATATYPE_IRIS:
            continue
        target = vocabulary.get(range_iri)
        if target is not None and target.kind is TermKind.CLASS:
            return True
    return False


def assemble_mapping(
    proposals: dict[str, MappingProposal],
    relation: RelationProposal | None,
    edits: ValidationEdits | None,
    profiles: dict[str, TableProfile],
    *,
    db_id: str = "",
    vocabulary: Vocabulary | None = None,
    final_confidence: ConfidenceClass | None = None,
    confidence_status: str = "OK",
    extra_warnings: tuple[str, ...] = (),
) -> SchemaMapping:
    """Merge validated stage outputs into the final mapping.

    The FK link predicate is the from-column's mapped property when that
    property's declared range contains a class; otherwise a generated
    ``ref_<from_column>`` predicate in the artifact namespace is used.
    """
    if set(proposals) != set(profiles):
        raise InconsistentInputs(
            f"proposals cover {sorted(proposals)} but profiles cover {sorted(profiles)}"
        )
    for name, proposal in proposals.items():
        profile_columns = [c.name for c in profiles[name].columns]
        proposal_columns = [c.column for c in proposal.columns]
        if sorted(profile_columns) != sorted(proposal_columns):
            raise InconsistentInputs(f"column sets disagree for table {name!r}")

    primary_keys = relation.primary_keys if relation is not None else {}
    tables = []
    for name in sorted(proposals):
        proposal = proposals[name]
        tables.append(
            TableMapping(
                name=name,
                class_iri=proposal.class_iri,
                class_confidence=proposal.class_confidence,
                primary_key=tuple(primary_keys.get(name, ())),
                columns=tuple(
                    ColumnLink(c.column, c.property_iri, c.confidence) for c in proposal.columns
                ),
            )
        )

    fk_links = []
    if relation is not None:
        for edge in relation.foreign_keys:
            if edge.from_table not in proposals or edge.to_table not in proposals:
                raise InconsistentInputs(f"foreign key {edge.endpoints} references unmapped tables")
            from_proposal = proposals[edge.from_table]
            from_column = next(c for c in from_proposal.columns if c.column == edge.from_column)
            if from_column.property_iri is not None and _property_has_class_range(
                from_column.property_iri, vocabulary
            ):
                predicate = from_column.property_iri
            else:
                predicate = _ref_predicate(edge.from_column)
            fk_links.append(
                FkLink(
                    from_table=edge.from_table,
                    from_column=edge.from_column,
                    to_table=edge.to_table,
                    to_column=edge.to_column,
                    predicate_iri=predicate,
                    confidence=edge.confidence,
                )
            )

    provenance: list[str] = [_PROMPT_VERSION_LINE]
    if relation is not None:
        provenance.extend(relation.dropped_edges)
    if edits is not None:
        for i, edit in enumerate(edits.edits):
            suffix = ""
            if edit.kind == "Remap":
                target = edit.replacement
                suffix = f" -> {target if isinstance(target, str) else f'{target[0]}.{target[1]}'}"
            provenance.append(f"edit[{i}] {edit.kind} {edit.target.describe()}{suffix}")
        provenance.extend(edits.warnings)
    provenance.extend(extra_warnings)

    return SchemaMapping(
        db_id=db_id,
        tables=tuple(tables),
        fk_links=tuple(fk_links),
        final_confidence=final_confidence,
        confidence_status=confidence_status,
        provenance=tuple(provenance),
    )


# --- materialization ---------------------------------------------------------

def _encode_pk_part(value) -> str:
    if isinstance(value, bytes):
        return value.hex()
    return quote(str(value), safe="")


def _format_literal(value, inferred_type: str) -> Literal:
    datatype = _XSD_BY_TYPE.get(inferred_type)
    if inferred_type == "Boolean":
        lexical = "true" if value in (1, True, "true", "t", "yes") else "false"
    elif inferred_type == "Real":
        lexical = str(float(value)) if not isinstance(value, str) else value
    elif isinstance(value, bytes):
        lexical = value.hex()
        datatype = None
    else:
        lexical = str(value)
    return Literal(lexical=lexical, datatype=datatype)


def materialize(
    db: sqlite3.Connection | str | Path,
    mapping: SchemaMapping,
    base_iri: str,
) -> MaterializeResult:
    """Emit per-row triples: one type triple, one literal per mapped non-null
    column, and one object triple per foreign key whose target row exists.

    Rows whose primary key is missing or null get the deterministic
    surrogate subject ``row<ordinal>`` (1-based physical order). Dangling
    foreign key values are skipped and counted, never fatal.
    """
    own_connection = not isinstance(db, sqlite3.Connection)
    conn = open_database(db) if own_connection else db
    base = base_iri.rstrip("/")
    try:
        table_rows: dict[str, list[tuple]] = {}
        table_columns: dict[str, list[str]] = {}
        inferred: dict[str, dict[str, str]] = {}
        for table in mapping.tables:
            profile = profile_table(conn, table.name, k=0)
            inferred[table.name] = {c.name: c.inferred_type for c in profile.columns}
            cursor = conn.execute(f"SELECT * FROM {_quote_ident(table.name)}")
            table_columns[table.name] = [d[0] for d in cursor.description]
            table_rows[table.name] = cursor.fetchall()

        subjects: dict[str, list[str]] = {}
        for table in mapping.tables:
            columns = table_columns[table.name]
            pk_idx = [columns.index(c) for c in table.primary_key if c in columns]
            subject_list = []
            for ordinal, row in enumerate(table_rows[table.name], start=1):
                parts = [row[i] for i in pk_idx]
                if not parts or any(p is None for p in parts):
                    suffix = f"row{ordinal}"
                else:
                    suffix = "_".join(_encode_pk_part(p) for p in parts)
                subject_list.append(f"{base}/{quote(table.name, safe='')}/{suffix}")
            subjects[table.name] = subject_list

        triples: list[Triple] = []
        unmapped_columns = 0
        for table in mapping.tables:
            columns = table_columns[table.name]
            mapped = [
                (columns.index(link.name), link.property_iri, inferred[table.name][link.name])
                for link in table.columns
                if link.property_iri is not None and link.name in columns
            ]
            unmapped_columns += sum(1 for link in table.columns if link.property_iri is None)
            for row, subject in zip(table_rows[table.name], subjects[table.name]):
                triples.append(Triple(subject, RDF_TYPE, table.class_iri))
                for col_idx, property_iri, inferred_type in mapped:
                    value = row[col_idx]
                    if value is None:
                        continue
                    triples.append(
                        Triple(subject, property_iri, _format_literal(value, inferred_type))
                    )

        dangling = 0
        for link in mapping.fk_links:
            to_columns = table_columns[link.to_table]
            to_idx = to_columns.index(link.to_column)
            targets: dict = {}
            for row, subject in zip(table_rows[link.to_table], subjects[link.to_table]):
                key = row[to_idx]
                if key is not None and key not in targets:
                    targets[key] = subject
            from_columns = table_columns[link.from_table]
            from_idx = from_columns.index(link.from_column)
            for row, subject in zip(table_rows[link.from_table], subjects[link.from_table]):
                value = row[from_idx]
                if value is None:
                    continue
                target = targets.get(value)
                if target is None:
                    dangling += 1
                    continue
                triples.append(Triple(subject, link.predicate_iri, target))
    finally:
        if own_connection:
            conn.close()

    triple_set = TripleSet(triples=tuple(triples))
    return MaterializeResult(
        triples=triple_set,
        triple_count=len(triples),
        dangling_fk_count=dangling,
        unmapped_column_count=unmapped_columns,
    )


# --- N-Triples ----------------------------------------------------------------

_NT_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape_literal(text: str) -> str:
    out = []
    for ch in text:
        if ch in _NT_ESCAPES:
            out.append(_NT_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _unescape_literal(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        code = text[i + 1]
        if code == "u":
            out.append(chr(int(text[i + 2 : i + 6], 16)))
            i += 6
        elif code == "U":
            out.append(chr(int(text[i + 2 : i + 10], 16)))
            i += 10
        else:
            out.append({"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}[code])
            i += 2
    return "".join(out)


def _serialize_object(obj: str | Literal) -> str:
    if isinstance(obj, str):
        return f"<{obj}>"
    rendered = f'"{_escape_literal(obj.lexical)}"'
    if obj.datatype:
        rendered += f"^^<{obj.datatype}>"
    return rendered


def serialize_ntriples(triple_set: TripleSet) -> str:
    """Canonical form: sorted lines, each ``<s> <p> o .`` plus newline."""
    lines = sorted(
        (t.subject, t.predicate, _serialize_object(t.obj)) for t in triple_set.triples
    )
    return "".join(f"<{s}> <{p}> {o} .\n" for s, p, o in lines)


_NT_LINE = re.compile(
    r'^<([^>]*)> <([^>]*)> (?:<([^>]*)>|"((?:[^"\\]|\\.)*)"(?:\^\^<([^>]*)>)?) \.$'
)


def parse_ntriples(text: str) -> TripleSet:
    """Reader for the canonical subset this module emits."""
    triples = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        match = _NT_LINE.match(line)
        if match is None:
            raise ValueError(f"line {line_no} is not a canonical N-Triples line: {line!r}")
        subject, predicate, obj_iri, literal, datatype = match.groups()
        if obj_iri is not None:
            obj: str | Literal = obj_iri
        else:
            obj = Literal(lexical=_unescape_literal(literal), datatype=datatype)
        triples.append(Triple(subject, predicate, obj))
    return TripleSet(triples=tuple(triples))


# --- mapping document ----------------------------------------------------------

def mapping_to_document(mapping: SchemaMapping) -> dict:
    return {
        "version": MAPPING_DOCUMENT_VERSION,
        "db_id": mapping.db_id,
        "tables": [
            {
                "name": t.name,
                "class_iri": t.class_iri,
                "class_confidence": t.class_confidence.value,
                "primary_key": list(t.primary_key),
                "columns": [
                    {
                        "name": c.name,
                        "property_iri": c.property_iri,
                        "confidence": c.confidence.value,
                    }
                    for c in t.columns
                ],
            }
            for t in mapping.tables
        ],
        "fk_links": [
            {
                "from_table": link.from_table,
                "from_column": link.from_column,
                "to_table": link.to_table,
                "to_column": link.to_column,
                "predicate_iri": link.predicate_iri,
                "confidence": link.confidence.value,
            }
            for link in mapping.fk_links
        ],
        "final_confidence": mapping.final_confidence.value if mapping.final_confidence else None,
        "confidence_status": mapping.confidence_status,
        "provenance": list(mapping.provenance),
    }


def mapping_from_document(doc: dict) -> SchemaMapping:
    tables = tuple(
        TableMapping(
            name=t["name"],
            class_iri=t["class_iri"],
            class_confidence=ConfidenceClass(t["class_confidence"]),
            primary_key=tuple(t["primary_key"]),
            columns=tuple(
                ColumnLink(c["name"], c["property_iri"], ConfidenceClass(c["confidence"]))
                for c in t["columns"]
            ),
        )
        for t in doc["tables"]
    )
    fk_links = tuple(
        FkLink(
            from_table=f["from_table"],
            from_column=f["from_column"],
            to_table=f["to_table"],
            to_column=f["to_column"],
            predicate_iri=f["predicate_iri"],
            confidence=ConfidenceClass(f["confidence"]),
        )
        for f in doc["fk_links"]
    )
    final = doc.get("final_confidence")
    return SchemaMapping(
        db_id=doc["db_id"],
        tables=tables,
        fk_links=fk_links,
        final_confidence=ConfidenceClass(final) if final else None,
        confidence_status=doc.get("confidence_status", "OK"),
        provenance=tuple(doc.get("provenance", ())),
    )


def serialize_mapping(mapping: SchemaMapping) -> str:
    """Byte-deterministic .mapping document."""
    return json.dumps(mapping_to_document(mapping), indent=2, sort_keys=True) + "\n"


def load_mapping(path: str | Path) -> SchemaMapping:
    return mapping_from_document(json.loads(Path(path).read_text(encoding="utf-8")))
