"""Scoring of generated mappings against gold annotation files.

An element is each gold table-class, each gold column (mapped or explicitly
unmapped), and each gold FK edge. An element is correct only on an exact
IRI match (gold values may be alias lists; matching any alias counts), on
both sides agreeing a column is unmapped, or on an exact FK endpoint match.
Accuracy is kept in exact rational arithmetic and rendered at two decimals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .agents.pipeline import ConfidenceClass, TimingRecord
from .errors import GoldNotFound, MismatchedDatabase
from .kgbuild import SchemaMapping

CATEGORIES = ("classes", "properties", "fks")
_BUCKETS = (ConfidenceClass.HIGH, ConfidenceClass.MEDIUM, ConfidenceClass.LOW)


@dataclass(frozen=True)
class GoldMapping:
    db_id: str
    table_classes: dict[str, tuple[str, ...]]
    columns: dict[str, dict[str, tuple[str, ...] | None]]
    foreign_keys: tuple[tuple[str, str, str, str], ...]


@dataclass
class _Bucket:
    total: int = 0
    correct: int = 0

    def accuracy(self) -> Fraction | None:
        if self.total == 0:
            return None
        return Fraction(self.correct, self.total)


@dataclass
class EvalReport:
    label: str = ""
    total: int = 0
    correct: int = 0
    by_confidence: dict[ConfidenceClass, _Bucket] = field(
        default_factory=lambda: {c: _Bucket() for c in _BUCKETS}
    )
    by_category: dict[str, _Bucket] = field(
        default_factory=lambda: {c: _Bucket() for c in CATEGORIES}
    )
    timing: TimingRecord | None = None

    @property
    def overall_accuracy(self) -> Fraction | None:
        if self.total == 0:
            return None
        return Fraction(self.correct, self.total)


def _aliases(value) -> tuple[str, ...] | None:
    if value is None:
        return None
    if isinstance(value, str):
        return (value,)
    return tuple(value)


def load_gold(path: str | Path) -> GoldMapping:
    path = Path(path)
    if not path.is_file():
        raise GoldNotFound(f"no gold mapping file at {path}")
    doc = json.loads(path.read_text(encoding="utf-8"))
    table_classes = {}
    columns: dict[str, dict[str, tuple[str, ...] | None]] = {}
    for table, spec in doc.get("tables", {}).items():
        table_classes[table] = _aliases(spec["class"]) or ()
        columns[table] = {c: _aliases(v) for c, v in spec.get("columns", {}).items()}
    fks = tuple(
        (f["from_table"], f["from_column"], f["to_table"], f["to_column"])
        for f in doc.get("foreign_keys", ())
    )
    return GoldMapping(
        db_id=doc.get("db_id", ""),
        table_classes=table_classes,
        columns=columns,
        foreign_keys=fks,
    )


def compare(
    mapping: SchemaMapping,
    gold: GoldMapping,
    timing: TimingRecord | None = None,
    label: str = "",
) -> EvalReport:
    """Score a mapping against gold; see the module docstring for the
    element universe. Gold FK edges the mapping never proposed carry no
    emitted confidence and are bucketed as incorrect under LOW.
    """
    if gold.db_id and mapping.db_id and gold.db_id != mapping.db_id:
        raise MismatchedDatabase(
            f"gold file is for {gold.db_id!r}, mapping is for {mapping.db_id!r}"
        )
    mapped_tables = {t.name: t for t in mapping.tables}
    for table in gold.table_classes:
        if table not in mapped_tables:
            raise MismatchedDatabase(f"gold references table {table!r} absent from the mapping")
        mapped_columns = {c.name for c in mapped_tables[table].columns}
        unknown = set(gold.columns.get(table, {})) - mapped_columns
        if unknown:
            raise MismatchedDatabase(
                f"gold references columns {sorted(unknown)} absent from table {table!r}"
            )

    report = EvalReport(label=label or mapping.db_id, timing=timing)

    def score(category: str, confidence: ConfidenceClass, correct: bool) -> None:
        report.total += 1
        report.by_confidence[confidence].total += 1
        report.by_category[category].total += 1
        if correct:
            report.correct += 1
            report.by_confidence[confidence].correct += 1
            report.by_category[category].correct += 1

    for table in sorted(gold.table_classes):
        mapped = mapped_tables[table]
        score("classes", mapped.class_confidence, mapped.class_iri in gold.table_classes[table])
        column_links = {c.name: c for c in mapped.columns}
        for column in sorted(gold.columns.get(table, {})):
            expected = gold.columns[table][column]
            link = column_links[column]
            if expected is None:
                correct = link.property_iri is None
            else:
                correct = link.property_iri in expected
            score("properties", link.confidence, correct)

    mapped_fks = {
        (f.from_table, f.from_column, f.to_table, f.to_column): f for f in mapping.fk_links
    }
    for endpoints in gold.foreign_keys:
        link = mapped_fks.get(endpoints)
        if link is None:
            score("fks", ConfidenceClass.LOW, False)
        else:
            score("fks", link.confidence, True)

    return report


def format_percent(value: Fraction | None) -> str:
    """Two-decimal percent display; empty buckets render as "/"."""
    if value is None:
        return "/"
    return f"{float(value) * 100:.2f}"


def render_report(reports: list[EvalReport], labels: list[str] | None = None) -> str:
    """Aligned plain-text accuracy and timing tables."""
    if labels is None:
        labels = [r.label for r in reports]

    accuracy_rows = [["Sector", "Elements", "Overall (%)", "HIGH (%)", "MEDIUM (%)", "LOW (%)"]]
    for label, report in zip(labels, reports):
        accuracy_rows.append(
            [
                label or "-",
                str(report.total),
                format_percent(report.overall_accuracy),
                format_percent(report.by_confidence[ConfidenceClass.HIGH].accuracy()),
                format_percent(report.by_confidence[ConfidenceClass.MEDIUM].accuracy()),
                format_percent(report.by_confidence[ConfidenceClass.LOW].accuracy()),
            ]
        )

    timing_rows = [["Sector", "Tables", "Columns", "Seconds"]]
    for label, report in zip(labels, reports):
        if report.timing is None:
            continue
        timing_rows.append(
            [
                label or "-",
                str(report.timing.tables),
                str(report.timing.columns),
                str(int(round(report.timing.seconds))),
            ]
        )

    return (
        "Accuracy\n"
        + _render_table(accuracy_rows)
        + "\n\nExecution time\n"
        + _render_table(timing_rows)
        + "\n"
    )


def _render_table(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for row_no, row in enumerate(rows):
        line = "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        lines.append(line)
        if row_no == 0:
            lines.append("  ".join("-" * widths[i] for i in range(len(row))).rstrip())
    return "\n".join(lines)
