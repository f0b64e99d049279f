"""Exception hierarchy shared across the pipeline.

Every error carries a stable ``code`` (the class name) that the CLI prints as
the first token of its one-line error output.
"""
from __future__ import annotations


class SemmapError(Exception):
    """Base class for all pipeline errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ConfigInvalid(SemmapError):
    """Configuration file or flag values failed validation."""


class MalformedVocabulary(SemmapError):
    """Vocabulary document is not in the flat-graph release form."""


class RemoteUnavailable(SemmapError):
    """Remote embeddings endpoint failed after the retry budget."""


class DimensionMismatch(SemmapError):
    """Vector dimensionalities disagree."""


class CorruptIndexFile(SemmapError):
    """Index file failed magic, structure, or consistency checks."""


class FingerprintMismatch(SemmapError):
    """Index was built by a different embedder than the one configured."""


class UnreadableDatabase(SemmapError):
    """Database file is missing or not a readable SQLite database."""


class UnknownTable(SemmapError):
    """Requested table does not exist in the database."""


class UnknownDbId(SemmapError):
    """Schema manifest has no entry for the requested database id."""


class MalformedManifest(SemmapError):
    """Schema manifest is structurally invalid."""


class BackendUnavailable(SemmapError):
    """Chat backend failed: network error, or replay transcript exhausted."""


class AgentOutputInvalid(SemmapError):
    """Agent response stayed invalid after the retry budget."""


class EmptyInput(SemmapError):
    """Operation requires a non-empty input."""


class InconsistentInputs(SemmapError):
    """Pipeline stage outputs disagree about the database structure."""


class MismatchedDatabase(SemmapError):
    """Gold file and mapping refer to different databases."""


class GoldNotFound(SemmapError):
    """No gold mapping file exists for the requested database."""


class MappingNotFound(SemmapError):
    """No mapping document exists for the requested database."""


class StageFailure(SemmapError):
    """A pipeline stage failed; ``partial`` holds completed stage outputs."""

    def __init__(self, stage: str, cause: Exception, partial: dict):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
        self.partial = partial
