"""Schema.org vocabulary parsing and one-hop term subgraphs.

Consumes the flat-graph release form (a JSON document whose ``@graph`` is a
node array), producing one :class:`TermRecord` per class or property node,
and builds the enriched one-hop subgraph plus its deterministic text
rendering for each term. The rendered text is the unit handed to the
embedder.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import requests

from .errors import MalformedVocabulary, RemoteUnavailable

SCHEMA_NS = "https://schema.org/"
PENDING_PART = "https://pending.schema.org"
ATTIC_PART = "https://attic.schema.org"

RELEASE_URL_TEMPLATE = (
    "https://schema.org/version/{version}/schemaorg-current-https.jsonld"
)

# Leaf datatypes: rendered by local name, never traversed.
DATATYPE_IRIS = frozenset(
    SCHEMA_NS + name
    for name in (
        "DataType",
        "Text",
        "URL",
        "Number",
        "Integer",
        "Float",
        "Date",
        "DateTime",
        "Time",
        "Boolean",
        "CssSelectorType",
        "PronounceableText",
        "XPathType",
    )
)

DEFAULT_HAS_PROPERTY_CAP = 25

_PREFIXES = {
    "schema": SCHEMA_NS,
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "dcterms": "http://purl.org/dc/terms/",
}

_CLASS_TYPE = "http://www.w3.org/2000/01/rdf-schema#Class"
_PROPERTY_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property"


class TermKind(Enum):
    CLASS = "Class"
    PROPERTY = "Property"


class TermStatus(Enum):
    ACTIVE = "Active"
    SUPERSEDED = "Superseded"
    PENDING = "Pending"


class NeighborRole(Enum):
    # Declaration order is the render order.
    SUPER_TYPE = "SuperType"
    DOMAIN_OF = "DomainOf"
    RANGE_OF = "RangeOf"
    HAS_PROPERTY = "HasProperty"


_ROLE_ORDER = {role: i for i, role in enumerate(NeighborRole)}


@dataclass(frozen=True)
class TermRecord:
    iri: str
    kind: TermKind
    label: str
    comment: str
    domain_includes: tuple[str, ...] = ()
    range_includes: tuple[str, ...] = ()
    super_types: tuple[str, ...] = ()
    status: TermStatus = TermStatus.ACTIVE


@dataclass(frozen=True)
class Neighbor:
    role: NeighborRole
    iri: str
    label: str


@dataclass(frozen=True)
class TermSubgraph:
    root: TermRecord
    neighbors: tuple[Neighbor, ...]
    rendered_text: str


@dataclass(frozen=True)
class UnresolvedReference:
    term_iri: str
    field: str
    ref_iri: str


@dataclass
class ParseReport:
    node_count: int = 0
    class_count: int = 0
    property_count: int = 0
    active_count: int = 0
    superseded_count: int = 0
    pending_count: int = 0
    skipped_count: int = 0
    unresolved: list[UnresolvedReference] = field(default_factory=list)


@dataclass
class Vocabulary:
    """Immutable after :func:`parse_vocabulary`; safe for concurrent reads."""

    terms: dict[str, TermRecord]
    report: ParseReport

    def get(self, iri: str) -> TermRecord | None:
        return self.terms.get(iri)

    def active_terms(self, include_pending: bool = False) -> list[TermRecord]:
        """Default index set: Active terms, optionally plus Pending ones."""
        wanted = {TermStatus.ACTIVE}
        if include_pending:
            wanted.add(TermStatus.PENDING)
        return sorted(
            (t for t in self.terms.values() if t.status in wanted),
            key=lambda t: t.iri,
        )


def local_name(iri: str) -> str:
    return iri.rstrip("/#").rsplit("/", 1)[-1].rsplit("#", 1)[-1]


def _expand_iri(value: str, prefixes: dict[str, str]) -> str:
    if "://" in value:
        return value
    prefix, sep, rest = value.partition(":")
    if sep and prefix in prefixes:
        return prefixes[prefix] + rest
    return value


def _strip_key(key: str) -> str:
    key = key.lstrip("@")
    for prefix in ("rdfs:", "rdf:", "schema:"):
        if key.startswith(prefix):
            return key[len(prefix):]
    return key


def _node_fields(node: dict) -> dict:
    return {_strip_key(k): v for k, v in node.items()}


def _as_list(value) -> list:
    if value is None:
        return []
    if isinstance(value, list):
        return value
    return [value]


def _ref_iris(value, prefixes: dict[str, str]) -> tuple[str, ...]:
    iris = []
    for item in _as_list(value):
        if isinstance(item, dict):
            ref = item.get("@id") or item.get("id")
        else:
            ref = item
        if isinstance(ref, str) and ref:
            iris.append(_expand_iri(ref, prefixes))
    return tuple(iris)


def _pick_language_text(value, fallback: str) -> str:
    """Default-language label selection: untagged first, then English."""
    untagged: str | None = None
    english: str | None = None
    for item in _as_list(value):
        if isinstance(item, str):
            untagged = untagged if untagged is not None else item
        elif isinstance(item, dict):
            text = item.get("@value")
            if not isinstance(text, str):
                continue
            lang = item.get("@language", "")
            if lang in ("", "en") and english is None:
                english = text
    chosen = untagged if untagged is not None else english
    if chosen is None:
        return fallback
    return " ".join(chosen.split())


def parse_vocabulary(document: str | bytes | dict | list) -> Vocabulary:
    """Parse a flat-graph release document into term records.

    Superseded nodes are kept with ``status=Superseded`` (and excluded from
    the default index set); references that do not resolve are recorded in
    the parse report rather than raised.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedVocabulary(f"document is not valid JSON: {exc}") from exc

    prefixes = dict(_PREFIXES)
    if isinstance(document, dict):
        context = document.get("@context", {})
        if isinstance(context, dict):
            for key, value in context.items():
                if isinstance(value, str) and "://" in value:
                    prefixes[key] = value
        nodes = document.get("@graph")
    elif isinstance(document, list):
        nodes = document
    else:
        nodes = None
    if not isinstance(nodes, list):
        raise MalformedVocabulary("missing top-level node array")

    report = ParseReport(node_count=len(nodes))
    terms: dict[str, TermRecord] = {}
    for node in nodes:
        if not isinstance(node, dict):
            raise MalformedVocabulary(f"node is not an object: {node!r}")
        fields = _node_fields(node)
        raw_id = fields.get("id")
        if not isinstance(raw_id, str) or not raw_id:
            raise MalformedVocabulary(f"node without id: {node!r}")
        iri = _expand_iri(raw_id, prefixes)

        types = {_expand_iri(t, prefixes) for t in _as_list(fields.get("type")) if isinstance(t, str)}
        if _CLASS_TYPE in types:
            kind = TermKind.CLASS
        elif _PROPERTY_TYPE in types:
            kind = TermKind.PROPERTY
        else:
            report.skipped_count += 1
            continue

        superseded_by = _ref_iris(fields.get("supersededBy"), prefixes)
        part_of = _ref_iris(fields.get("isPartOf"), prefixes)
        if superseded_by or any(p.startswith(ATTIC_PART) for p in part_of):
            status = TermStatus.SUPERSEDED
        elif any(p.startswith(PENDING_PART) for p in part_of):
            status = TermStatus.PENDING
        else:
            status = TermStatus.ACTIVE

        label = _pick_language_text(fields.get("label"), fallback=local_name(iri))
        comment = _pick_language_text(fields.get("comment"), fallback="")
        super_refs = _ref_iris(fields.get("subClassOf"), prefixes)
        super_refs += _ref_iris(fields.get("subPropertyOf"), prefixes)

        record = TermRecord(
            iri=iri,
            kind=kind,
            label=label,
            comment=comment,
            domain_includes=_ref_iris(fields.get("domainIncludes"), prefixes)
            if kind is TermKind.PROPERTY
            else (),
            range_includes=_ref_iris(fields.get("rangeIncludes"), prefixes)
            if kind is TermKind.PROPERTY
            else (),
            super_types=tuple(sorted(set(super_refs))),
            status=status,
        )
        if iri in terms:
            raise MalformedVocabulary(f"duplicate node id {iri}")
        terms[iri] = record

        if kind is TermKind.CLASS:
            report.class_count += 1
        else:
            report.property_count += 1
        if status is TermStatus.ACTIVE:
            report.active_count += 1
        elif status is TermStatus.SUPERSEDED:
            report.superseded_count += 1
        else:
            report.pending_count += 1

    vocabulary = Vocabulary(terms=terms, report=report)
    _collect_unresolved(vocabulary)
    return vocabulary


def _collect_unresolved(vocabulary: Vocabulary) -> None:
    for term in sorted(vocabulary.terms.values(), key=lambda t: t.iri):
        for field_name, refs in (
            ("domain_includes", term.domain_includes),
            ("range_includes", term.range_includes),
            ("super_types", term.super_types),
        ):
            for ref in refs:
                if not ref.startswith(SCHEMA_NS):
                    continue
                if ref in vocabulary.terms or ref in DATATYPE_IRIS:
                    continue
                vocabulary.report.unresolved.append(
                    UnresolvedReference(term.iri, field_name, ref)
                )


def _neighbor_label(iri: str, vocabulary: Vocabulary) -> str:
    record = vocabulary.get(iri)
    if record is not None:
        return record.label
    return local_name(iri)


def _resolvable(iri: str, vocabulary: Vocabulary) -> bool:
    return iri in vocabulary.terms or iri in DATATYPE_IRIS


def build_subgraph(
    term: TermRecord,
    vocabulary: Vocabulary,
    has_property_cap: int = DEFAULT_HAS_PROPERTY_CAP,
) -> TermSubgraph:
    """One-hop semantic neighborhood of a term.

    Properties contribute their supertypes, domains and ranges; classes get
    their supertypes plus up to ``has_property_cap`` Active properties that
    declare the class in their domain, ordered by property IRI. References
    that neither resolve in the vocabulary nor name a known datatype are
    omitted (they are already in the parse report).
    """
    neighbors: list[Neighbor] = []

    def add(role: NeighborRole, iri: str) -> None:
        if not _resolvable(iri, vocabulary):
            return
        neighbors.append(Neighbor(role, iri, _neighbor_label(iri, vocabulary)))

    for ref in term.super_types:
        add(NeighborRole.SUPER_TYPE, ref)
    if term.kind is TermKind.PROPERTY:
        for ref in term.domain_includes:
            add(NeighborRole.DOMAIN_OF, ref)
        for ref in term.range_includes:
            add(NeighborRole.RANGE_OF, ref)
    else:
        attached = sorted(
            record.iri
            for record in vocabulary.terms.values()
            if record.kind is TermKind.PROPERTY
            and record.status is TermStatus.ACTIVE
            and term.iri in record.domain_includes
        )
        for iri in attached[:has_property_cap]:
            add(NeighborRole.HAS_PROPERTY, iri)

    ordered = tuple(sorted(set(neighbors), key=lambda n: (_ROLE_ORDER[n.role], n.iri)))
    return TermSubgraph(
        root=term, neighbors=ordered, rendered_text=_render(term, ordered)
    )


def _render(root: TermRecord, neighbors: tuple[Neighbor, ...]) -> str:
    lines = [f"{root.label} — {root.kind.value} — {root.comment}"]
    for n in sorted(neighbors, key=lambda n: (_ROLE_ORDER[n.role], n.iri)):
        lines.append(f"{n.role.value}: {n.label}")
    return "\n".join(lines)


def render_subgraph_text(subgraph: TermSubgraph) -> str:
    """Deterministic text form: header block, then one sorted neighbor line each."""
    return _render(subgraph.root, subgraph.neighbors)


def load_vocabulary(path: str | Path) -> Vocabulary:
    return parse_vocabulary(Path(path).read_text(encoding="utf-8"))


def fetch_release(version: str, dest: str | Path, timeout: float = 60.0) -> Path:
    """Download a vocabulary release by version tag over HTTPS."""
    url = RELEASE_URL_TEMPLATE.format(version=version)
    try:
        resp = requests.get(url, timeout=timeout)
        resp.raise_for_status()
    except requests.RequestException as exc:
        raise RemoteUnavailable(f"could not fetch {url}: {exc}") from exc
    dest = Path(dest)
    dest.parent.mkdir(parents=True, exist_ok=True)
    dest.write_bytes(resp.content)
    return dest
