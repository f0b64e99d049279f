"""Operator-facing command line.

Configuration comes from a JSON file selected with --config; individual
flags override file values. Secrets never live in the config: backends
name an environment variable and read the token from there. Exit codes:
0 success, 2 invalid configuration, 1 any pipeline error (the first token
of the one-line stderr message is the stable error code).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .agents.backends import LiveBackend, RecordingBackend, ReplayBackend
from .agents.pipeline import MapOptions, TimingRecord, map_database
from .embed import Embedder, EmbedderConfig
from .errors import (
    ConfigInvalid,
    GoldNotFound,
    MappingNotFound,
    SemmapError,
    StageFailure,
)
from .evalharness import compare, load_gold, render_report
from .ingest import list_tables, open_database, profile_table
from .kgbuild import (
    assemble_mapping,
    load_mapping,
    materialize,
    serialize_mapping,
    serialize_ntriples,
)
from .vocab import fetch_release, load_vocabulary
from .vstore import index_build, index_load, index_save


@dataclass
class ChatConfig:
    mode: str = "replay"  # live | replay
    endpoint: str = ""
    model: str = ""
    auth_env: str = ""
    transcript: str = ""


@dataclass
class PipelineConfig:
    vocabulary: str = ""
    index: str = ""
    embedder: EmbedderConfig = field(default_factory=EmbedderConfig)
    chat: ChatConfig = field(default_factory=ChatConfig)
    k_rows: int = 5
    k_class: int = 10
    k_prop: int = 15
    retry_budget: int = 3
    max_workers: int = 1
    base_iri: str = "http://example.org/data"
    out_dir: str = "out"
    gold_dir: str = "eval"
    include_pending: bool = False
    has_property_cap: int = 25
    annotations: str = ""
    seed: int = 0

    def validate(self) -> None:
        if self.k_rows < 0:
            raise ConfigInvalid(f"k_rows must be >= 0, got {self.k_rows}")
        if self.k_class < 1 or self.k_prop < 1:
            raise ConfigInvalid("k_class and k_prop must be >= 1")
        if self.retry_budget < 1:
            raise ConfigInvalid(f"retry_budget must be >= 1, got {self.retry_budget}")
        if self.max_workers < 1:
            raise ConfigInvalid(f"max_workers must be >= 1, got {self.max_workers}")
        if self.chat.mode not in ("live", "replay"):
            raise ConfigInvalid(f"chat mode must be live or replay, got {self.chat.mode!r}")


def load_config(path: str | None) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigInvalid(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigInvalid("config must be a JSON object")
    known = {f.name for f in dataclasses.fields(PipelineConfig)}
    unknown = set(doc) - known
    if unknown:
        raise ConfigInvalid(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(doc)
    if "embedder" in kwargs:
        try:
            kwargs["embedder"] = EmbedderConfig(**kwargs["embedder"])
        except TypeError as exc:
            raise ConfigInvalid(f"bad embedder config: {exc}") from exc
    if "chat" in kwargs:
        try:
            kwargs["chat"] = ChatConfig(**kwargs["chat"])
        except TypeError as exc:
            raise ConfigInvalid(f"bad chat config: {exc}") from exc
    try:
        return PipelineConfig(**kwargs)
    except TypeError as exc:
        raise ConfigInvalid(f"bad config: {exc}") from exc


def _apply_overrides(config: PipelineConfig, args: argparse.Namespace) -> PipelineConfig:
    if getattr(args, "index", None):
        config.index = args.index
    if getattr(args, "vocab", None):
        config.vocabulary = args.vocab
    if getattr(args, "k_rows", None) is not None:
        config.k_rows = args.k_rows
    if getattr(args, "k_class", None) is not None:
        config.k_class = args.k_class
    if getattr(args, "k_prop", None) is not None:
        config.k_prop = args.k_prop
    if getattr(args, "backend", None):
        config.chat.mode = args.backend
    if getattr(args, "transcript", None):
        config.chat.transcript = args.transcript
    if getattr(args, "out", None):
        config.out_dir = args.out
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
    if getattr(args, "include_pending", False):
        config.include_pending = True
    return config


def _require_file(path: str, what: str) -> Path:
    if not path:
        raise ConfigInvalid(f"no {what} configured")
    resolved = Path(path)
    if not resolved.is_file():
        raise ConfigInvalid(f"{what} not found at {resolved}")
    return resolved


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semmap",
        description="Map relational databases onto a shared web vocabulary and "
        "materialize the result as a knowledge graph.",
    )
    parser.add_argument("--config", help="JSON configuration file; flags override it")
    parser.add_argument("--seed", type=int, help="seed for any stochastic feature (reserved)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-index", help="embed the vocabulary and write the index file")
    p.add_argument("--vocab", help="vocabulary release file (flat-graph JSON)")
    p.add_argument("--index", help="output index path")
    p.add_argument("--include-pending", action="store_true", dest="include_pending",
                   help="also index terms from the pending section")

    p = sub.add_parser("profile", help="print table profiles for a database")
    p.add_argument("--db", required=True, help="SQLite database file")
    p.add_argument("--k-rows", type=int, dest="k_rows", help="sample rows per table")

    p = sub.add_parser("map", help="run the agent flow and write mapping + report")
    p.add_argument("--db", required=True, help="SQLite database file")
    p.add_argument("--index", help="index file to retrieve candidates from")
    p.add_argument("--backend", choices=["live", "replay"], help="chat backend mode")
    p.add_argument("--transcript", help="replay transcript to read, or to write with --record")
    p.add_argument("--record", action="store_true", help="record a replay transcript while mapping")
    p.add_argument("--materialize", action="store_true", help="also write the N-Triples file")
    p.add_argument("--out", help="output directory")
    p.add_argument("--k-rows", type=int, dest="k_rows", help="sample rows per table")
    p.add_argument("--k-class", type=int, dest="k_class", help="class candidates per table")
    p.add_argument("--k-prop", type=int, dest="k_prop", help="property candidates per column")

    p = sub.add_parser("materialize", help="materialize triples from an existing mapping")
    p.add_argument("--db", required=True, help="SQLite database file")
    p.add_argument("--out", help="output directory holding the .mapping file")

    p = sub.add_parser("eval", help="compare a mapping against its gold file")
    p.add_argument("--db", required=True, help="SQLite database file")
    p.add_argument("--out", help="output directory holding the .mapping file")
    p.add_argument("--report-file", help="also write the rendered tables to this file")

    p = sub.add_parser("record", help="run map against the live backend, recording a transcript")
    p.add_argument("--db", required=True, help="SQLite database file")
    p.add_argument("--transcript", required=True, help="transcript file to write")
    p.add_argument("--index", help="index file to retrieve candidates from")
    p.add_argument("--out", help="output directory")

    p = sub.add_parser("fetch-vocab", help="download a vocabulary release over HTTPS")
    p.add_argument("--version", required=True, help="release version tag")
    p.add_argument("--dest", required=True, help="destination file")

    return parser


def _cmd_build_index(config: PipelineConfig) -> int:
    vocab_path = _require_file(config.vocabulary, "vocabulary file")
    if not config.index:
        raise ConfigInvalid("no index path configured")
    vocabulary = load_vocabulary(vocab_path)
    index = index_build(
        vocabulary,
        Embedder(config.embedder),
        include_pending=config.include_pending,
        has_property_cap=config.has_property_cap,
    )
    index_save(index, config.index)
    print(f"indexed {len(index)} terms into {config.index}")
    return 0


def _profile_payloads(db_path: Path, k_rows: int) -> list[dict]:
    from .agents.prompts import profile_payload

    db = open_database(db_path)
    try:
        return [profile_payload(profile_table(db, name, k=k_rows)) for name in list_tables(db)]
    finally:
        db.close()


def _cmd_profile(config: PipelineConfig, args: argparse.Namespace) -> int:
    db_path = _require_file(args.db, "database file")
    payloads = _profile_payloads(db_path, config.k_rows)
    print(json.dumps(payloads, indent=2, sort_keys=True))
    return 0


def _make_backend(config: PipelineConfig, record: bool):
    if config.chat.mode == "replay":
        transcript = _require_file(config.chat.transcript, "replay transcript")
        backend = ReplayBackend.from_file(transcript)
        recorder = None
    else:
        if not config.chat.endpoint:
            raise ConfigInvalid("live backend requires chat.endpoint")
        backend = LiveBackend(
            endpoint=config.chat.endpoint,
            model=config.chat.model,
            auth_env=config.chat.auth_env,
            retries=config.retry_budget,
        )
        recorder = None
    if record:
        if config.chat.mode == "replay":
            raise ConfigInvalid("--record needs the live backend")
        if not config.chat.transcript:
            raise ConfigInvalid("--record needs --transcript for the output file")
        backend = RecordingBackend(backend)
        recorder = backend
    return backend, recorder


def _write_report(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _cmd_map(config: PipelineConfig, args: argparse.Namespace) -> int:
    db_path = _require_file(args.db, "database file")
    index_path = _require_file(config.index, "index file")
    vocab_path = _require_file(config.vocabulary, "vocabulary file")
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    vocabulary = load_vocabulary(vocab_path)
    index = index_load(index_path)
    embedder = Embedder(config.embedder)
    backend, recorder = _make_backend(config, record=getattr(args, "record", False))
    options = MapOptions(
        k_rows=config.k_rows,
        k_class=config.k_class,
        k_prop=config.k_prop,
        retry_budget=config.retry_budget,
        max_workers=config.max_workers,
        annotations_path=config.annotations or None,
    )

    db_id = db_path.stem
    try:
        result = map_database(backend, embedder, index, db_path, options)
    except StageFailure as failure:
        report = {
            "db_id": db_id,
            "status": "aborted",
            "failed_stage": failure.stage,
            "error": str(failure.cause),
            "completed_stages": sorted(set(failure.partial) - {"db_id"}),
        }
        _write_report(out_dir / f"{db_id}.partial.report", report)
        if isinstance(failure.cause, KeyboardInterrupt):
            print(f"aborted: partial results in {out_dir / f'{db_id}.partial.report'}", file=sys.stderr)
            return 130
        raise

    mapping = assemble_mapping(
        result.validated_proposals,
        result.validated_relation,
        result.edits,
        result.profiles,
        db_id=result.db_id,
        vocabulary=vocabulary,
        final_confidence=result.final_confidence,
        confidence_status=result.confidence_status,
    )
    mapping_path = out_dir / f"{db_id}.mapping"
    mapping_path.write_text(serialize_mapping(mapping), encoding="utf-8")

    report = {
        "db_id": db_id,
        "status": "ok",
        "confidence_status": result.confidence_status,
        "final_confidence": result.final_confidence.value if result.final_confidence else None,
        "timing": {
            "tables": result.timing.tables,
            "columns": result.timing.columns,
            "seconds": result.timing.seconds,
            "stage_seconds": result.timing.stage_seconds,
        },
        "warnings": list(result.warnings),
        "backend_fingerprint": backend.fingerprint,
        "index_fingerprint": index.embedder_fingerprint,
    }

    if getattr(args, "materialize", False):
        materialized = materialize(db_path, mapping, config.base_iri)
        (out_dir / f"{db_id}.nt").write_text(
            serialize_ntriples(materialized.triples), encoding="utf-8"
        )
        report["materialization"] = {
            "triples": materialized.triple_count,
            "dangling_fks": materialized.dangling_fk_count,
            "unmapped_columns": materialized.unmapped_column_count,
        }

    _write_report(out_dir / f"{db_id}.report", report)
    if recorder is not None:
        recorder.save(config.chat.transcript)

    print(f"mapped {result.timing.tables} tables / {result.timing.columns} columns -> {mapping_path}")
    return 0


def _cmd_materialize(config: PipelineConfig, args: argparse.Namespace) -> int:
    db_path = _require_file(args.db, "database file")
    out_dir = Path(config.out_dir)
    db_id = db_path.stem
    mapping_path = out_dir / f"{db_id}.mapping"
    if not mapping_path.is_file():
        raise MappingNotFound(f"no mapping document at {mapping_path}; run map first")
    mapping = load_mapping(mapping_path)
    materialized = materialize(db_path, mapping, config.base_iri)
    nt_path = out_dir / f"{db_id}.nt"
    nt_path.write_text(serialize_ntriples(materialized.triples), encoding="utf-8")

    report_path = out_dir / f"{db_id}.report"
    report = {}
    if report_path.is_file():
        report = json.loads(report_path.read_text(encoding="utf-8"))
    report["materialization"] = {
        "triples": materialized.triple_count,
        "dangling_fks": materialized.dangling_fk_count,
        "unmapped_columns": materialized.unmapped_column_count,
    }
    report.setdefault("db_id", db_id)
    _write_report(report_path, report)
    print(f"wrote {materialized.triple_count} triples -> {nt_path}")
    return 0


def _timing_from_report(report_path: Path) -> TimingRecord | None:
    if not report_path.is_file():
        return None
    doc = json.loads(report_path.read_text(encoding="utf-8"))
    timing = doc.get("timing")
    if not timing:
        return None
    return TimingRecord(
        tables=timing.get("tables", 0),
        columns=timing.get("columns", 0),
        seconds=timing.get("seconds", 0.0),
        stage_seconds=timing.get("stage_seconds", {}),
    )


def _cmd_eval(config: PipelineConfig, args: argparse.Namespace) -> int:
    db_path = _require_file(args.db, "database file")
    db_id = db_path.stem
    out_dir = Path(config.out_dir)
    mapping_path = out_dir / f"{db_id}.mapping"
    if not mapping_path.is_file():
        raise MappingNotFound(f"no mapping document at {mapping_path}; run map first")
    gold_path = Path(config.gold_dir) / f"{db_id}.gold"
    if not gold_path.is_file():
        raise GoldNotFound(f"no gold mapping file at {gold_path}")

    mapping = load_mapping(mapping_path)
    gold = load_gold(gold_path)
    timing = _timing_from_report(out_dir / f"{db_id}.report")
    report = compare(mapping, gold, timing=timing, label=db_id)
    rendered = render_report([report])
    print(rendered, end="")
    if getattr(args, "report_file", None):
        Path(args.report_file).write_text(rendered, encoding="utf-8")
    return 0


def _cmd_fetch_vocab(args: argparse.Namespace) -> int:
    dest = fetch_release(args.version, args.dest)
    print(f"fetched release {args.version} -> {dest}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        config = _apply_overrides(config, args)
        config.validate()
        if args.command == "build-index":
            return _cmd_build_index(config)
        if args.command == "profile":
            return _cmd_profile(config, args)
        if args.command == "map":
            return _cmd_map(config, args)
        if args.command == "materialize":
            return _cmd_materialize(config, args)
        if args.command == "eval":
            return _cmd_eval(config, args)
        if args.command == "record":
            config.chat.mode = "live"
            args.record = True
            args.materialize = False
            args.k_rows = args.k_class = args.k_prop = None
            return _cmd_map(config, args)
        if args.command == "fetch-vocab":
            return _cmd_fetch_vocab(args)
        raise ConfigInvalid(f"unknown command {args.command!r}")
    except ConfigInvalid as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 2
    except StageFailure as exc:
        cause = exc.cause
        code = cause.code if isinstance(cause, SemmapError) else type(cause).__name__
        print(f"{code}: {exc}", file=sys.stderr)
        return 1
    except SemmapError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
