"""Relational database introspection.

Profiles SQLite tables into column statistics, inferred types and
first-K sample rows, reads declared key metadata, and resolves Spider-style
schema manifests (which encode foreign keys as column index pairs) into
named gold schemas. All access is read-only: connections are opened with
SQLite's read-only URI mode.
"""
from __future__ import annotations

import datetime as dt
import json
import re
import sqlite3
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .errors import MalformedManifest, UnknownDbId, UnknownTable, UnreadableDatabase

DEFAULT_SAMPLE_ROWS = 5
MAX_VALUE_CHARS = 120
TYPE_THRESHOLD = 0.9
TOP_VALUE_COUNT = 5

_INT_RE = re.compile(r"[+-]?\d+\Z")
_REAL_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")
_BOOL_STRINGS = frozenset({"true", "false", "t", "f", "yes", "no"})


@dataclass(frozen=True)
class ColumnStats:
    row_count: int
    null_count: int
    distinct_count: int
    min_value: str | int | float | None = None
    max_value: str | int | float | None = None
    mean: float | None = None
    avg_length: float | None = None
    top_values: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class ColumnProfile:
    name: str
    declared_type: str
    inferred_type: str  # Integer | Real | Text | Date | Boolean | Unknown
    stats: ColumnStats
    description: str | None = None


@dataclass(frozen=True)
class TableProfile:
    name: str
    columns: tuple[ColumnProfile, ...]
    sample_rows: tuple[tuple, ...]
    row_count: int
    description: str | None = None


@dataclass(frozen=True)
class DeclaredKeys:
    """Schema-level key metadata, used as agent hints only."""

    primary_key: tuple[str, ...]
    foreign_keys: tuple[tuple[str, str, str], ...]  # (from_column, to_table, to_column)


@dataclass(frozen=True)
class GoldSchema:
    db_id: str
    tables: tuple[str, ...]
    columns: dict[str, tuple[str, ...]]
    primary_keys: tuple[tuple[str, tuple[str, ...]], ...]
    foreign_keys: tuple[tuple[str, str, str, str], ...]


def open_database(path: str | Path) -> sqlite3.Connection:
    """Open a SQLite file read-only; fail eagerly on unreadable input."""
    path = Path(path)
    if not path.is_file():
        raise UnreadableDatabase(f"no such database file: {path}")
    try:
        conn = sqlite3.connect(f"file:{path}?mode=ro", uri=True)
        conn.execute("SELECT name FROM sqlite_master LIMIT 1")
    except sqlite3.Error as exc:
        raise UnreadableDatabase(f"cannot open {path}: {exc}") from exc
    return conn


def list_tables(db: sqlite3.Connection) -> list[str]:
    """User tables only, ascending; SQLite internals are excluded."""
    try:
        rows = db.execute(
            "SELECT name FROM sqlite_master WHERE type = 'table'"
        ).fetchall()
    except sqlite3.Error as exc:
        raise UnreadableDatabase(f"cannot list tables: {exc}") from exc
    return sorted(name for (name,) in rows if not name.startswith("sqlite_"))


def _quote_ident(name: str) -> str:
    return '"' + name.replace('"', '""') + '"'


def _truncate(text: str) -> str:
    if len(text) <= MAX_VALUE_CHARS:
        return text
    return text[: MAX_VALUE_CHARS - 3] + "..."


def _cell(value) -> str | int | float | None:
    if isinstance(value, bytes):
        return f"<{len(value)} bytes>"
    if isinstance(value, str):
        return _truncate(value)
    return value


def _parses_int(value) -> bool:
    if isinstance(value, bool):
        return False
    if isinstance(value, int):
        return True
    if isinstance(value, str):
        return bool(_INT_RE.match(value.strip()))
    return False


def _parses_real(value) -> bool:
    if isinstance(value, bool):
        return False
    if isinstance(value, (int, float)):
        return True
    if isinstance(value, str):
        return bool(_REAL_RE.match(value.strip()))
    return False


def _parses_date(value) -> bool:
    if not isinstance(value, str):
        return False
    try:
        dt.date.fromisoformat(value.strip())
    except ValueError:
        return False
    return True


def _parses_bool(value, declared: str) -> bool:
    if isinstance(value, bool):
        return True
    if isinstance(value, str):
        return value.strip().lower() in _BOOL_STRINGS
    if isinstance(value, int) and "BOOL" in declared.upper():
        return value in (0, 1)
    return False


def _infer_type(values: list, declared: str) -> str:
    """Most specific type that >= 90% of non-null values parse as; Text otherwise."""
    if not values:
        return "Unknown"
    total = len(values)
    counts = {
        "Boolean": sum(1 for v in values if _parses_bool(v, declared)),
        "Integer": sum(1 for v in values if _parses_int(v)),
        "Real": sum(1 for v in values if _parses_real(v)),
        "Date": sum(1 for v in values if _parses_date(v)),
    }
    for name in ("Boolean", "Integer", "Real", "Date"):
        if counts[name] / total >= TYPE_THRESHOLD:
            return name
    return "Text"


def _column_stats(values: list, row_count: int, inferred: str) -> ColumnStats:
    non_null = [v for v in values if v is not None]
    null_count = row_count - len(non_null)
    distinct_count = len({str(v) for v in non_null})

    min_value: str | int | float | None = None
    max_value: str | int | float | None = None
    mean: float | None = None
    avg_length: float | None = None
    if non_null:
        if inferred in ("Integer", "Real", "Boolean"):
            numeric = [float(v) for v in non_null if _parses_real(v)]
            if numeric:
                mean = sum(numeric) / len(numeric)
                min_value = min(numeric)
                max_value = max(numeric)
                if inferred == "Integer":
                    min_value = int(min_value)
                    max_value = int(max_value)
        else:
            as_text = sorted(str(v) for v in non_null)
            min_value = _truncate(as_text[0])
            max_value = _truncate(as_text[-1])
        if inferred in ("Text", "Date", "Unknown"):
            lengths = [len(str(v)) for v in non_null]
            avg_length = sum(lengths) / len(lengths)

    counter = Counter(str(v) for v in non_null)
    top = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))[:TOP_VALUE_COUNT]
    top_values = tuple((_truncate(value), freq) for value, freq in top)

    return ColumnStats(
        row_count=row_count,
        null_count=null_count,
        distinct_count=distinct_count,
        min_value=min_value,
        max_value=max_value,
        mean=mean,
        avg_length=avg_length,
        top_values=top_values,
    )


def profile_table(
    db: sqlite3.Connection,
    name: str,
    k: int = DEFAULT_SAMPLE_ROWS,
    annotations: dict | None = None,
) -> TableProfile:
    """Profile one table in a single scan over all rows.

    ``k`` caps the sample; stats always cover every row. ``annotations``
    is the optional sidecar document with table/column descriptions.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if name not in list_tables(db):
        raise UnknownTable(f"no such table: {name}")
    info = db.execute(f"PRAGMA table_info({_quote_ident(name)})").fetchall()
    col_names = [row[1] for row in info]
    declared = {row[1]: (row[2] or "") for row in info}

    columns_values: dict[str, list] = {c: [] for c in col_names}
    sample_rows: list[tuple] = []
    row_count = 0
    cursor = db.execute(f"SELECT * FROM {_quote_ident(name)}")
    for row in cursor:
        if row_count < k:
            sample_rows.append(tuple(_cell(v) for v in row))
        row_count += 1
        for col, value in zip(col_names, row):
            columns_values[col].append(value)

    annotations = annotations or {}
    table_desc = annotations.get("tables", {}).get(name)
    column_descs = annotations.get("columns", {}).get(name, {})

    profiles = []
    for col in col_names:
        values = columns_values[col]
        non_null = [v for v in values if v is not None]
        inferred = _infer_type(non_null, declared[col])
        profiles.append(
            ColumnProfile(
                name=col,
                declared_type=declared[col],
                inferred_type=inferred,
                stats=_column_stats(values, row_count, inferred),
                description=column_descs.get(col),
            )
        )
    return TableProfile(
        name=name,
        columns=tuple(profiles),
        sample_rows=tuple(sample_rows),
        row_count=row_count,
        description=table_desc,
    )


def declared_keys(db: sqlite3.Connection, table: str) -> DeclaredKeys:
    """PRAGMA-level PK/FK metadata; hints for the relation agent, never trusted."""
    if table not in list_tables(db):
        raise UnknownTable(f"no such table: {table}")
    info = db.execute(f"PRAGMA table_info({_quote_ident(table)})").fetchall()
    pk = tuple(row[1] for row in sorted(info, key=lambda r: r[5]) if row[5] > 0)
    fks = []
    for row in db.execute(f"PRAGMA foreign_key_list({_quote_ident(table)})").fetchall():
        # (id, seq, table, from, to, on_update, on_delete, match)
        fks.append((row[3], row[2], row[4] if row[4] is not None else ""))
    return DeclaredKeys(primary_key=pk, foreign_keys=tuple(sorted(fks)))


def load_annotations(path: str | Path) -> dict:
    """Optional sidecar: {"tables": {t: desc}, "columns": {t: {c: desc}}}."""
    path = Path(path)
    if not path.is_file():
        return {}
    return json.loads(path.read_text(encoding="utf-8"))


def load_gold_schema(manifest_path: str | Path, db_id: str) -> GoldSchema:
    """Resolve one manifest entry, turning FK column-index pairs into names."""
    path = Path(manifest_path)
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedManifest(f"cannot read manifest {path}: {exc}") from exc
    if not isinstance(manifest, list):
        raise MalformedManifest("manifest must be a list of database entries")

    entry = next((e for e in manifest if isinstance(e, dict) and e.get("db_id") == db_id), None)
    if entry is None:
        raise UnknownDbId(f"db_id {db_id!r} not present in {path}")

    tables = entry.get("table_names_original") or entry.get("table_names")
    raw_columns = entry.get("column_names_original") or entry.get("column_names")
    if not isinstance(tables, list) or not isinstance(raw_columns, list):
        raise MalformedManifest(f"entry {db_id!r} is missing table or column name lists")

    def column_ref(index) -> tuple[str, str]:
        if not isinstance(index, int) or not 0 <= index < len(raw_columns):
            raise MalformedManifest(f"column index {index!r} out of range for {db_id!r}")
        table_index, column = raw_columns[index]
        if not isinstance(table_index, int) or not 0 <= table_index < len(tables):
            raise MalformedManifest(f"column index {index!r} does not belong to a table")
        return tables[table_index], column

    columns: dict[str, list[str]] = {t: [] for t in tables}
    for item in raw_columns:
        if not (isinstance(item, list) and len(item) == 2):
            raise MalformedManifest(f"bad column entry {item!r} in {db_id!r}")
        table_index, column = item
        if table_index == -1:  # the pseudo "*" column
            continue
        columns[tables[table_index]].append(column)

    pk_by_table: dict[str, list[str]] = {}
    for index in entry.get("primary_keys", []):
        table, column = column_ref(index)
        pk_by_table.setdefault(table, []).append(column)

    fks = []
    for pair in entry.get("foreign_keys", []):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise MalformedManifest(f"bad foreign_keys entry {pair!r} in {db_id!r}")
        (from_table, from_column) = column_ref(pair[0])
        (to_table, to_column) = column_ref(pair[1])
        fks.append((from_table, from_column, to_table, to_column))

    return GoldSchema(
        db_id=db_id,
        tables=tuple(tables),
        columns={t: tuple(cols) for t, cols in columns.items()},
        primary_keys=tuple(sorted((t, tuple(cols)) for t, cols in pk_by_table.items())),
        foreign_keys=tuple(fks),
    )
