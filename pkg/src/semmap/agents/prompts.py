"""Prompt assembly from the versioned templates shipped with the package.

Each template file holds the system message and the user-message body
(separated by a ``===`` line); the user body takes one ``$payload`` slot
filled with a canonical JSON document, so identical inputs always produce
byte-identical prompts.
"""
from __future__ import annotations

import json
from importlib import resources
from string import Template

from ..ingest import ColumnProfile, DeclaredKeys, TableProfile

PROMPT_VERSIONS = {
    "mapping": "mapping_v1",
    "relation": "relation_v1",
    "validator": "validator_v1",
}

FALLBACK_CLASS_IRI = "https://schema.org/Thing"

_SEPARATOR = "\n===\n"


def _load_template(role: str) -> tuple[str, Template]:
    name = PROMPT_VERSIONS[role] + ".txt"
    text = resources.files("semmap.prompts").joinpath(name).read_text(encoding="utf-8")
    system, _, user = text.partition(_SEPARATOR)
    return system.strip(), Template(user.strip())


def _canonical(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _round(score: float) -> float:
    return round(score, 6)


def _column_payload(column: ColumnProfile) -> dict:
    stats = column.stats
    return {
        "name": column.name,
        "declared_type": column.declared_type,
        "inferred_type": column.inferred_type,
        "stats": {
            "row_count": stats.row_count,
            "null_count": stats.null_count,
            "distinct_count": stats.distinct_count,
            "min": stats.min_value,
            "max": stats.max_value,
            "mean": stats.mean,
            "avg_length": stats.avg_length,
            "top_values": [list(pair) for pair in stats.top_values],
        },
        "description": column.description,
    }


def profile_payload(profile: TableProfile) -> dict:
    return {
        "table": profile.name,
        "row_count": profile.row_count,
        "description": profile.description,
        "columns": [_column_payload(c) for c in profile.columns],
        "sample_rows": [list(row) for row in profile.sample_rows],
    }


def _candidates_payload(candidates) -> dict:
    return {
        "class_candidates": [
            {"iri": c.iri, "score": _round(c.score), "context": c.rendered_text}
            for c in candidates.class_candidates
        ],
        "property_candidates": {
            column: [
                {"iri": c.iri, "score": _round(c.score), "context": c.rendered_text}
                for c in ranked
            ]
            for column, ranked in sorted(candidates.property_candidates.items())
        },
    }


def mapping_messages(profile: TableProfile, candidates) -> list[tuple[str, str]]:
    system, user = _load_template("mapping")
    payload = {
        "profile": profile_payload(profile),
        "candidates": _candidates_payload(candidates),
        "fallback_class_iri": FALLBACK_CLASS_IRI,
    }
    return [("system", system), ("user", user.substitute(payload=_canonical(payload)))]


def relation_messages(
    profiles: list[TableProfile],
    mapped_classes: dict[str, str],
    declared: dict[str, DeclaredKeys],
) -> list[tuple[str, str]]:
    system, user = _load_template("relation")
    payload = {
        "tables": [
            {
                "table": p.name,
                "mapped_class": mapped_classes.get(p.name),
                "row_count": p.row_count,
                "columns": [
                    {
                        "name": c.name,
                        "inferred_type": c.inferred_type,
                        "top_values": [list(pair) for pair in c.stats.top_values],
                    }
                    for c in p.columns
                ],
                "declared_primary_key": list(declared[p.name].primary_key)
                if p.name in declared
                else [],
                "declared_foreign_keys": [
                    {"from_column": f, "to_table": t, "to_column": c}
                    for f, t, c in declared[p.name].foreign_keys
                ]
                if p.name in declared
                else [],
            }
            for p in sorted(profiles, key=lambda p: p.name)
        ]
    }
    return [("system", system), ("user", user.substitute(payload=_canonical(payload)))]


def validator_messages(
    proposals_payload: list[dict],
    relation_payload: dict,
    profiles: list[TableProfile],
) -> list[tuple[str, str]]:
    system, user = _load_template("validator")
    payload = {
        "mapping_proposals": proposals_payload,
        "relation_proposal": relation_payload,
        "profiles": [profile_payload(p) for p in sorted(profiles, key=lambda p: p.name)],
    }
    return [("system", system), ("user", user.substitute(payload=_canonical(payload)))]


def correction_message(error: str) -> tuple[str, str]:
    return (
        "user",
        "Your previous response was invalid: "
        + error
        + "\nAnswer again with exactly one JSON object of the required shape.",
    )
