"""Semantic mapping of relational databases to a shared web vocabulary.

The pipeline indexes vocabulary term subgraphs in a vector store, profiles
SQLite databases, runs a three-agent LLM flow (mapping, relations,
validation) with replayable transcripts, assembles the validated schema
mapping, and can materialize database rows as an N-Triples knowledge graph.
"""

__version__ = "0.1.0"

from . import agents, embed, errors, evalharness, ingest, kgbuild, vocab, vstore

__all__ = [
    "agents",
    "embed",
    "errors",
    "evalharness",
    "ingest",
    "kgbuild",
    "vocab",
    "vstore",
    "__version__",
]
