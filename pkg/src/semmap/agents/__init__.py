from .backends import (
    ChatBackend,
    LiveBackend,
    RecordingBackend,
    ReplayBackend,
    ScriptedBackend,
    request_digest,
)
from .pipeline import (
    CandidateSet,
    CandidateTerm,
    ColumnMapping,
    ConfidenceClass,
    Edit,
    EditTarget,
    ForeignKeyEdge,
    MapOptions,
    MapResult,
    MappingProposal,
    RelationProposal,
    TimingRecord,
    ValidationEdits,
    aggregate_confidence,
    apply_edits,
    map_database,
    proposal_payload,
    relation_payload,
    retrieve_candidates,
    run_mapping_agent,
    run_relation_agent,
    run_validator_agent,
)
from .prompts import FALLBACK_CLASS_IRI

__all__ = [
    "ChatBackend",
    "LiveBackend",
    "RecordingBackend",
    "ReplayBackend",
    "ScriptedBackend",
    "request_digest",
    "CandidateSet",
    "CandidateTerm",
    "ColumnMapping",
    "ConfidenceClass",
    "Edit",
    "EditTarget",
    "ForeignKeyEdge",
    "MapOptions",
    "MapResult",
    "MappingProposal",
    "RelationProposal",
    "TimingRecord",
    "ValidationEdits",
    "aggregate_confidence",
    "apply_edits",
    "map_database",
    "proposal_payload",
    "relation_payload",
    "retrieve_candidates",
    "run_mapping_agent",
    "run_relation_agent",
    "run_validator_agent",
    "FALLBACK_CLASS_IRI",
]
