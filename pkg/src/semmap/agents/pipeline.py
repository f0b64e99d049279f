"""Three-stage agent orchestration over one database.

Table-wise flow: profile, retrieve candidate terms, run the mapping agent
per table, then the relation agent over all tables, then the validator.
Agent responses are JSON documents checked against the shipped schemas
plus semantic rules (candidate membership, column coverage, endpoint
existence); invalid responses trigger corrective retries within a budget.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cache
from importlib import resources
from pathlib import Path
from typing import Sequence

import jsonschema

from ..embed import Embedder
from ..errors import (
    AgentOutputInvalid,
    EmptyInput,
    FingerprintMismatch,
    StageFailure,
)
from ..ingest import (
    DeclaredKeys,
    TableProfile,
    declared_keys,
    list_tables,
    load_annotations,
    open_database,
    profile_table,
)
from ..vstore import VectorIndex
from ..vocab import TermKind
from .backends import ChatBackend
from .prompts import (
    FALLBACK_CLASS_IRI,
    correction_message,
    mapping_messages,
    relation_messages,
    validator_messages,
)

DEFAULT_K_CLASS = 10
DEFAULT_K_PROP = 15
DEFAULT_RETRY_BUDGET = 3

_RESPONSE_FORMAT = {"type": "json_object"}


class ConfidenceClass(Enum):
    HIGH = "HIGH"
    MEDIUM = "MEDIUM"
    LOW = "LOW"

    @classmethod
    def parse(cls, value: str) -> "ConfidenceClass":
        try:
            return cls(value)
        except ValueError:
            raise AgentOutputInvalid(f"invalid confidence {value!r}") from None


_CONFIDENCE_SCORE = {ConfidenceClass.LOW: 0, ConfidenceClass.MEDIUM: 1, ConfidenceClass.HIGH: 2}


def aggregate_confidence(items: Sequence[ConfidenceClass]) -> ConfidenceClass:
    """Mean of LOW=0 / MEDIUM=1 / HIGH=2, cut at 0.5 and 1.5."""
    if not items:
        raise EmptyInput("cannot aggregate an empty confidence list")
    mean = sum(_CONFIDENCE_SCORE[c] for c in items) / len(items)
    if mean >= 1.5:
        return ConfidenceClass.HIGH
    if mean >= 0.5:
        return ConfidenceClass.MEDIUM
    return ConfidenceClass.LOW


@dataclass(frozen=True)
class CandidateTerm:
    iri: str
    score: float
    rendered_text: str


@dataclass(frozen=True)
class CandidateSet:
    class_candidates: tuple[CandidateTerm, ...]
    property_candidates: dict[str, tuple[CandidateTerm, ...]]


@dataclass(frozen=True)
class ColumnMapping:
    column: str
    property_iri: str | None
    confidence: ConfidenceClass
    rationale: str = ""


@dataclass(frozen=True)
class MappingProposal:
    table: str
    class_iri: str
    class_confidence: ConfidenceClass
    columns: tuple[ColumnMapping, ...]
    retry_count: int = 0


@dataclass(frozen=True)
class ForeignKeyEdge:
    from_table: str
    from_column: str
    to_table: str
    to_column: str
    confidence: ConfidenceClass

    @property
    def endpoints(self) -> tuple[str, str, str, str]:
        return (self.from_table, self.from_column, self.to_table, self.to_column)


@dataclass(frozen=True)
class RelationProposal:
    primary_keys: dict[str, tuple[str, ...]]
    pk_absent: tuple[str, ...]
    foreign_keys: tuple[ForeignKeyEdge, ...]
    confidence: ConfidenceClass
    dropped_edges: tuple[str, ...] = ()
    retry_count: int = 0


@dataclass(frozen=True)
class EditTarget:
    category: str  # table-class | column-property | fk
    table: str = ""
    column: str = ""
    fk: tuple[str, str, str, str] | None = None

    def describe(self) -> str:
        if self.category == "table-class":
            return f"table-class:{self.table}"
        if self.category == "column-property":
            return f"column-property:{self.table}.{self.column}"
        ft, fc, tt, tc = self.fk or ("", "", "", "")
        return f"fk:{ft}.{fc}->{tt}.{tc}"


@dataclass(frozen=True)
class Edit:
    kind: str  # Keep | Remap | Remove
    target: EditTarget
    replacement: str | tuple[str, str] | None = None


@dataclass(frozen=True)
class ValidationEdits:
    edits: tuple[Edit, ...]
    confidence: ConfidenceClass
    warnings: tuple[str, ...] = ()
    retry_count: int = 0


@cache
def _schema(name: str) -> dict:
    text = resources.files("semmap.schemas").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


def _parse_json_response(text: str) -> dict:
    stripped = text.strip()
    if stripped.startswith("```"):
        stripped = stripped.split("\n", 1)[-1]
        stripped = stripped.rsplit("```", 1)[0]
    try:
        doc = json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise AgentOutputInvalid(f"response is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise AgentOutputInvalid("response JSON must be an object")
    return doc


def _validate_schema(doc: dict, schema_name: str) -> None:
    try:
        jsonschema.validate(doc, _schema(schema_name))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise AgentOutputInvalid(f"schema violation at {path or '<root>'}: {exc.message}") from exc


def _send_with_retries(backend: ChatBackend, base_messages: list, parse, retry_budget: int):
    """Send, parse, and on invalid output retry with the error appended."""
    messages = list(base_messages)
    last_error: AgentOutputInvalid | None = None
    for attempt in range(retry_budget):
        response = backend.send(messages, response_format=_RESPONSE_FORMAT)
        try:
            return parse(response), attempt
        except AgentOutputInvalid as exc:
            last_error = exc
            messages = messages + [("assistant", response), correction_message(str(exc))]
    raise AgentOutputInvalid(
        f"agent output still invalid after {retry_budget} attempts: {last_error}"
    )


# --- candidate retrieval ----------------------------------------------------

def table_query_text(profile: TableProfile) -> str:
    parts = [profile.name] + [c.name for c in profile.columns]
    if profile.description:
        parts.append(profile.description)
    return " ".join(parts)


def column_query_text(profile: TableProfile, column_name: str) -> str:
    column = next(c for c in profile.columns if c.name == column_name)
    parts = [column.name, column.inferred_type]
    parts.extend(value for value, _ in column.stats.top_values)
    if column.description:
        parts.append(column.description)
    return " ".join(parts)


def retrieve_candidates(
    profile: TableProfile,
    index: VectorIndex,
    embedder: Embedder,
    k_class: int = DEFAULT_K_CLASS,
    k_prop: int = DEFAULT_K_PROP,
) -> CandidateSet:
    """Class candidates for the table and property candidates per column."""
    if embedder.fingerprint != index.embedder_fingerprint:
        raise FingerprintMismatch(
            f"index was built with {index.embedder_fingerprint!r}, "
            f"configured embedder is {embedder.fingerprint!r}"
        )

    def lookup(query_text: str, k: int, kind: TermKind) -> tuple[CandidateTerm, ...]:
        vector = embedder.embed(query_text)
        ranked = index.top_k(vector, k, kind=kind)
        return tuple(
            CandidateTerm(iri=iri, score=score, rendered_text=index.get(iri).rendered_text)
            for iri, score in ranked
        )

    class_candidates = lookup(table_query_text(profile), k_class, TermKind.CLASS)
    property_candidates = {
        column.name: lookup(column_query_text(profile, column.name), k_prop, TermKind.PROPERTY)
        for column in profile.columns
    }
    return CandidateSet(class_candidates=class_candidates, property_candidates=property_candidates)


# --- mapping agent ----------------------------------------------------------

def _parse_mapping(response: str, profile: TableProfile, candidates: CandidateSet) -> MappingProposal:
    doc = _parse_json_response(response)
    _validate_schema(doc, "mapping_proposal.schema.json")
    if doc["table"] != profile.name:
        raise AgentOutputInvalid(f"response maps table {doc['table']!r}, expected {profile.name!r}")

    allowed_classes = {c.iri for c in candidates.class_candidates} | {FALLBACK_CLASS_IRI}
    if doc["class_iri"] not in allowed_classes:
        raise AgentOutputInvalid(
            f"class_iri {doc['class_iri']!r} is not among the provided class candidates "
            f"or the fallback {FALLBACK_CLASS_IRI}"
        )

    expected = [c.name for c in profile.columns]
    got = [item["column"] for item in doc["columns"]]
    if sorted(got) != sorted(expected):
        raise AgentOutputInvalid(
            f"columns must cover the profile exactly once; expected {sorted(expected)}, got {sorted(got)}"
        )

    by_name = {item["column"]: item for item in doc["columns"]}
    columns = []
    for name in expected:  # normalize to profile order
        item = by_name[name]
        property_iri = item["property_iri"]
        if property_iri is not None:
            allowed = {c.iri for c in candidates.property_candidates.get(name, ())}
            if property_iri not in allowed:
                raise AgentOutputInvalid(
                    f"property_iri {property_iri!r} for column {name!r} is not among "
                    f"that column's candidates; pick a listed candidate or null"
                )
        columns.append(
            ColumnMapping(
                column=name,
                property_iri=property_iri,
                confidence=ConfidenceClass.parse(item["confidence"]),
                rationale=item.get("rationale", ""),
            )
        )
    return MappingProposal(
        table=profile.name,
        class_iri=doc["class_iri"],
        class_confidence=ConfidenceClass.parse(doc["class_confidence"]),
        columns=tuple(columns),
    )


def run_mapping_agent(
    backend: ChatBackend,
    profile: TableProfile,
    candidates: CandidateSet,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> MappingProposal:
    proposal, retries = _send_with_retries(
        backend,
        mapping_messages(profile, candidates),
        lambda response: _parse_mapping(response, profile, candidates),
        retry_budget,
    )
    return replace(proposal, retry_count=retries)


# --- relation agent ---------------------------------------------------------

def _parse_relation(
    response: str, profiles: dict[str, TableProfile]
) -> RelationProposal:
    doc = _parse_json_response(response)
    _validate_schema(doc, "relation_proposal.schema.json")

    listed = [item["table"] for item in doc["tables"]]
    if sorted(listed) != sorted(profiles):
        raise AgentOutputInvalid(
            f"tables must cover the database exactly once; expected {sorted(profiles)}, got {sorted(listed)}"
        )

    primary_keys: dict[str, tuple[str, ...]] = {}
    pk_absent: list[str] = []
    for item in doc["tables"]:
        table = item["table"]
        profile = profiles[table]
        columns = {c.name for c in profile.columns}
        unknown = [c for c in item["primary_key"] if c not in columns]
        if unknown:
            raise AgentOutputInvalid(f"primary key of {table!r} names unknown columns {unknown}")
        if not item["primary_key"] and not item["pk_absent"] and profile.row_count > 0:
            raise AgentOutputInvalid(
                f"table {table!r} has rows but neither a primary key nor pk_absent=true"
            )
        primary_keys[table] = tuple(item["primary_key"])
        if item["pk_absent"]:
            pk_absent.append(table)

    edges: list[ForeignKeyEdge] = []
    dropped: list[str] = []
    seen: set[tuple[str, str, str, str]] = set()
    for item in doc["foreign_keys"]:
        edge = ForeignKeyEdge(
            from_table=item["from_table"],
            from_column=item["from_column"],
            to_table=item["to_table"],
            to_column=item["to_column"],
            confidence=ConfidenceClass.parse(item["confidence"]),
        )
        problem = _edge_problem(edge, profiles)
        if problem is not None:
            dropped.append(f"dropped foreign key {edge.endpoints}: {problem}")
            continue
        if edge.endpoints in seen:
            dropped.append(f"dropped duplicate foreign key {edge.endpoints}")
            continue
        seen.add(edge.endpoints)
        edges.append(edge)

    return RelationProposal(
        primary_keys=primary_keys,
        pk_absent=tuple(sorted(pk_absent)),
        foreign_keys=tuple(edges),
        confidence=ConfidenceClass.parse(doc["confidence"]),
        dropped_edges=tuple(dropped),
    )


def _edge_problem(edge: ForeignKeyEdge, profiles: dict[str, TableProfile]) -> str | None:
    for side, table, column in (
        ("from", edge.from_table, edge.from_column),
        ("to", edge.to_table, edge.to_column),
    ):
        if table not in profiles:
            return f"{side}-table {table!r} is not a profiled table"
        if column not in {c.name for c in profiles[table].columns}:
            return f"{side}-column {table}.{column} does not exist"
    return None


def run_relation_agent(
    backend: ChatBackend,
    profiles: dict[str, TableProfile],
    proposals: dict[str, MappingProposal],
    declared: dict[str, DeclaredKeys] | None = None,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> RelationProposal:
    if not profiles:
        raise EmptyInput("relation agent needs at least one table")
    declared = declared or {}
    mapped_classes = {t: p.class_iri for t, p in proposals.items()}
    relation, retries = _send_with_retries(
        backend,
        relation_messages(sorted(profiles.values(), key=lambda p: p.name), mapped_classes, declared),
        lambda response: _parse_relation(response, profiles),
        retry_budget,
    )
    return replace(relation, retry_count=retries)


# --- validator agent --------------------------------------------------------

def proposal_payload(proposal: MappingProposal) -> dict:
    return {
        "table": proposal.table,
        "class_iri": proposal.class_iri,
        "class_confidence": proposal.class_confidence.value,
        "columns": [
            {
                "column": c.column,
                "property_iri": c.property_iri,
                "confidence": c.confidence.value,
                "rationale": c.rationale,
            }
            for c in proposal.columns
        ],
    }


def relation_payload(relation: RelationProposal) -> dict:
    return {
        "tables": [
            {
                "table": table,
                "primary_key": list(pk),
                "pk_absent": table in relation.pk_absent,
            }
            for table, pk in sorted(relation.primary_keys.items())
        ],
        "foreign_keys": [
            {
                "from_table": e.from_table,
                "from_column": e.from_column,
                "to_table": e.to_table,
                "to_column": e.to_column,
                "confidence": e.confidence.value,
            }
            for e in relation.foreign_keys
        ],
        "confidence": relation.confidence.value,
    }


def _parse_edits(
    response: str,
    proposals: dict[str, MappingProposal],
    relation: RelationProposal,
    profiles: dict[str, TableProfile],
) -> ValidationEdits:
    doc = _parse_json_response(response)
    _validate_schema(doc, "validation_edits.schema.json")
    edges = {e.endpoints for e in relation.foreign_keys}

    edits: list[Edit] = []
    for i, item in enumerate(doc["edits"]):
        kind = item["kind"]
        raw_target = item["target"]
        category = raw_target["type"]
        replacement = item.get("replacement")

        if category == "table-class":
            table = raw_target.get("table", "")
            if table not in proposals:
                raise AgentOutputInvalid(f"edit {i} targets unknown table {table!r}")
            target = EditTarget(category=category, table=table)
        elif category == "column-property":
            table = raw_target.get("table", "")
            column = raw_target.get("column", "")
            proposal = proposals.get(table)
            if proposal is None or column not in {c.column for c in proposal.columns}:
                raise AgentOutputInvalid(f"edit {i} targets unknown column {table}.{column}")
            target = EditTarget(category=category, table=table, column=column)
        else:
            fk = tuple(
                raw_target.get(key, "")
                for key in ("from_table", "from_column", "to_table", "to_column")
            )
            if fk not in edges:
                raise AgentOutputInvalid(f"edit {i} targets unknown foreign key {fk}")
            target = EditTarget(category=category, fk=fk)

        if kind == "Remap":
            if replacement is None:
                raise AgentOutputInvalid(f"edit {i}: Remap requires a replacement")
            if category == "fk":
                if not isinstance(replacement, dict):
                    raise AgentOutputInvalid(f"edit {i}: fk remap replacement must be an endpoint object")
                to_table = replacement["to_table"]
                to_column = replacement["to_column"]
                if to_table not in profiles or to_column not in {
                    c.name for c in profiles[to_table].columns
                }:
                    raise AgentOutputInvalid(
                        f"edit {i}: fk remap points at unknown endpoint {to_table}.{to_column}"
                    )
                parsed_replacement: str | tuple[str, str] = (to_table, to_column)
            else:
                if not isinstance(replacement, str):
                    raise AgentOutputInvalid(f"edit {i}: remap replacement must be an IRI string")
                parsed_replacement = replacement
        elif kind == "Remove":
            if replacement is not None:
                raise AgentOutputInvalid(f"edit {i}: Remove must not carry a replacement")
            if category == "table-class":
                raise AgentOutputInvalid(
                    f"edit {i}: a table class cannot be removed, only re-mapped"
                )
            parsed_replacement = None
        else:  # Keep
            if replacement is not None:
                raise AgentOutputInvalid(f"edit {i}: Keep must not carry a replacement")
            parsed_replacement = None

        edits.append(Edit(kind=kind, target=target, replacement=parsed_replacement))

    return ValidationEdits(
        edits=tuple(edits), confidence=ConfidenceClass.parse(doc["confidence"])
    )


def apply_edits(
    proposals: dict[str, MappingProposal],
    relation: RelationProposal,
    edits: ValidationEdits,
) -> tuple[dict[str, MappingProposal], RelationProposal, tuple[str, ...]]:
    """Apply edits in document order; the second edit on a target is ignored.

    A pure function of its inputs, so replaying the edit log against the
    original proposals reproduces the validated outputs exactly.
    """
    validated = dict(proposals)
    fk_edges = list(relation.foreign_keys)
    warnings: list[str] = []
    touched: set[str] = set()

    for edit in edits.edits:
        key = edit.target.describe()
        if key in touched:
            warnings.append(f"ConflictingEdit: second edit on {key} ignored")
            continue
        touched.add(key)
        if edit.kind == "Keep":
            continue
        if edit.target.category == "table-class":
            proposal = validated[edit.target.table]
            validated[edit.target.table] = replace(proposal, class_iri=edit.replacement)
        elif edit.target.category == "column-property":
            proposal = validated[edit.target.table]
            new_value = None if edit.kind == "Remove" else edit.replacement
            columns = tuple(
                replace(c, property_iri=new_value) if c.column == edit.target.column else c
                for c in proposal.columns
            )
            validated[edit.target.table] = replace(proposal, columns=columns)
        else:
            index = next(i for i, e in enumerate(fk_edges) if e.endpoints == edit.target.fk)
            if edit.kind == "Remove":
                del fk_edges[index]
            else:
                to_table, to_column = edit.replacement
                fk_edges[index] = replace(fk_edges[index], to_table=to_table, to_column=to_column)

    validated_relation = replace(relation, foreign_keys=tuple(fk_edges))
    return validated, validated_relation, tuple(warnings)


def run_validator_agent(
    backend: ChatBackend,
    proposals: dict[str, MappingProposal],
    relation: RelationProposal,
    profiles: dict[str, TableProfile],
    retry_budget: int = DEFAULT_RETRY_BUDGET,
) -> tuple[ValidationEdits, dict[str, MappingProposal], RelationProposal]:
    proposals_doc = [proposal_payload(proposals[t]) for t in sorted(proposals)]
    edits, retries = _send_with_retries(
        backend,
        validator_messages(proposals_doc, relation_payload(relation), list(profiles.values())),
        lambda response: _parse_edits(response, proposals, relation, profiles),
        retry_budget,
    )
    validated_proposals, validated_relation, warnings = apply_edits(proposals, relation, edits)
    edits = replace(edits, warnings=warnings, retry_count=retries)
    return edits, validated_proposals, validated_relation


# --- whole-database orchestration -------------------------------------------

@dataclass(frozen=True)
class TimingRecord:
    tables: int
    columns: int
    seconds: float
    stage_seconds: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class MapOptions:
    k_rows: int = 5
    k_class: int = DEFAULT_K_CLASS
    k_prop: int = DEFAULT_K_PROP
    retry_budget: int = DEFAULT_RETRY_BUDGET
    max_workers: int = 1
    annotations_path: str | None = None


@dataclass(frozen=True)
class MapResult:
    db_id: str
    profiles: dict[str, TableProfile]
    declared: dict[str, DeclaredKeys]
    proposals: dict[str, MappingProposal]
    relation: RelationProposal | None
    edits: ValidationEdits | None
    validated_proposals: dict[str, MappingProposal]
    validated_relation: RelationProposal | None
    final_confidence: ConfidenceClass | None
    confidence_status: str  # OK | NOT_APPLICABLE
    timing: TimingRecord
    warnings: tuple[str, ...] = ()


def _collect_confidences(
    proposals: dict[str, MappingProposal],
    relation: RelationProposal,
    edits: ValidationEdits,
) -> list[ConfidenceClass]:
    items: list[ConfidenceClass] = []
    for table in sorted(proposals):
        proposal = proposals[table]
        items.append(proposal.class_confidence)
        items.extend(c.confidence for c in proposal.columns)
    items.extend(e.confidence for e in relation.foreign_keys)
    items.extend(ConfidenceClass.LOW for _ in relation.dropped_edges)
    items.append(relation.confidence)
    items.append(edits.confidence)
    return items


def map_database(
    backend: ChatBackend,
    embedder: Embedder,
    index: VectorIndex,
    db_path: str | Path,
    options: MapOptions = MapOptions(),
) -> MapResult:
    """Run the full profile/retrieve/map/relate/validate flow over one database.

    Per-table mapping calls may run concurrently up to ``options.max_workers``;
    the relation and validator stages run once after every table completes.
    Any stage failure aborts with a :class:`StageFailure` carrying the
    partial results produced so far.
    """
    db_path = Path(db_path)
    db_id = db_path.stem
    started = time.perf_counter()
    stage_seconds: dict[str, float] = {}
    partial: dict = {"db_id": db_id}

    def timed(stage: str, fn):
        # KeyboardInterrupt included: Ctrl-C becomes a graceful abort that
        # still carries the partial results produced so far.
        t0 = time.perf_counter()
        try:
            result = fn()
        except (Exception, KeyboardInterrupt) as exc:
            stage_seconds[stage] = time.perf_counter() - t0
            raise StageFailure(stage, exc, dict(partial)) from exc
        stage_seconds[stage] = time.perf_counter() - t0
        return result

    if embedder.fingerprint != index.embedder_fingerprint:
        raise FingerprintMismatch(
            f"index was built with {index.embedder_fingerprint!r}, "
            f"configured embedder is {embedder.fingerprint!r}"
        )

    annotations = load_annotations(options.annotations_path) if options.annotations_path else {}

    def profile_stage() -> tuple[dict[str, TableProfile], dict[str, DeclaredKeys]]:
        db = open_database(db_path)
        try:
            names = list_tables(db)
            profiles = {
                name: profile_table(db, name, k=options.k_rows, annotations=annotations)
                for name in names
            }
            declared = {name: declared_keys(db, name) for name in names}
        finally:
            db.close()
        return profiles, declared

    profiles, declared = timed("profile", profile_stage)
    partial["profiles"] = profiles
    partial["declared"] = declared
    columns_total = sum(len(p.columns) for p in profiles.values())

    if not profiles:
        # Zero-table database: aggregation has no items, reported as such.
        return MapResult(
            db_id=db_id,
            profiles={},
            declared={},
            proposals={},
            relation=None,
            edits=None,
            validated_proposals={},
            validated_relation=None,
            final_confidence=None,
            confidence_status="NOT_APPLICABLE",
            timing=TimingRecord(
                tables=0,
                columns=0,
                seconds=time.perf_counter() - started,
                stage_seconds=dict(stage_seconds),
            ),
        )

    def retrieve_stage() -> dict[str, CandidateSet]:
        return {
            name: retrieve_candidates(
                profiles[name], index, embedder, k_class=options.k_class, k_prop=options.k_prop
            )
            for name in sorted(profiles)
        }

    candidates = timed("retrieve", retrieve_stage)

    def mapping_stage() -> dict[str, MappingProposal]:
        names = sorted(profiles)
        if options.max_workers <= 1:
            return {
                name: run_mapping_agent(
                    backend, profiles[name], candidates[name], retry_budget=options.retry_budget
                )
                for name in names
            }
        with ThreadPoolExecutor(max_workers=options.max_workers) as pool:
            futures = {
                name: pool.submit(
                    run_mapping_agent,
                    backend,
                    profiles[name],
                    candidates[name],
                    options.retry_budget,
                )
                for name in names
            }
            return {name: futures[name].result() for name in names}

    proposals = timed("mapping", mapping_stage)
    partial["proposals"] = proposals

    relation = timed(
        "relation",
        lambda: run_relation_agent(
            backend, profiles, proposals, declared, retry_budget=options.retry_budget
        ),
    )
    partial["relation"] = relation

    edits, validated_proposals, validated_relation = timed(
        "validation",
        lambda: run_validator_agent(
            backend, proposals, relation, profiles, retry_budget=options.retry_budget
        ),
    )

    final_confidence = aggregate_confidence(_collect_confidences(proposals, relation, edits))
    warnings = tuple(relation.dropped_edges) + tuple(edits.warnings)

    return MapResult(
        db_id=db_id,
        profiles=profiles,
        declared=declared,
        proposals=proposals,
        relation=relation,
        edits=edits,
        validated_proposals=validated_proposals,
        validated_relation=validated_relation,
        final_confidence=final_confidence,
        confidence_status="OK",
        timing=TimingRecord(
            tables=len(profiles),
            columns=columns_total,
            seconds=time.perf_counter() - started,
            stage_seconds=dict(stage_seconds),
        ),
        warnings=warnings,
    )
