from __future__ import annotations

import hashlib
import json
from pathlib import Path

import pytest

from semmap import cli
from semmap.agents.backends import ScriptedBackend

from .conftest import GOLD_DIR, GOLDEN, MOVIEDB, SNAPSHOT, TRANSCRIPT

DATA = Path(__file__).resolve().parent / "data"

SPEC_FLAGS = [
    "--config",
    "--db",
    "--index",
    "--k-rows",
    "--k-class",
    "--k-prop",
    "--backend",
    "--transcript",
    "--record",
    "--materialize",
    "--out",
    "--seed",
]


@pytest.fixture()
def config_path(tmp_path) -> Path:
    out_dir = tmp_path / "out"
    index_path = tmp_path / "schemaorg.swix"
    config = {
        "vocabulary": str(SNAPSHOT),
        "index": str(index_path),
        "embedder": {"backend": "baseline", "dims": 512},
        "chat": {"mode": "replay", "transcript": str(TRANSCRIPT)},
        "out_dir": str(out_dir),
        "gold_dir": str(GOLD_DIR),
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    return path


def _build_index(config_path) -> int:
    return cli.main(["--config", str(config_path), "build-index"])


def test_main_help_matches_golden(monkeypatch):
    monkeypatch.setenv("COLUMNS", "100")
    golden = (DATA / "cli_help.txt").read_text()
    assert cli.build_parser().format_help() == golden


def test_every_documented_flag_appears_in_help():
    parser = cli.build_parser()
    all_help = parser.format_help()
    sub_actions = next(
        a for a in parser._actions if a.__class__.__name__ == "_SubParsersAction"
    )
    for sub in sub_actions.choices.values():
        all_help += sub.format_help()
    for flag in SPEC_FLAGS:
        assert flag in all_help, f"{flag} missing from help output"


def test_missing_config_file_exits_2(capsys):
    code = cli.main(["--config", "/nonexistent/config.json", "build-index"])
    assert code == 2
    assert capsys.readouterr().err.startswith("ConfigInvalid:")


def test_invalid_config_values_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"k_rows": -4}))
    assert cli.main(["--config", str(bad), "profile", "--db", str(MOVIEDB)]) == 2

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"mystery_key": True}))
    assert cli.main(["--config", str(unknown), "profile", "--db", str(MOVIEDB)]) == 2
    assert "ConfigInvalid" in capsys.readouterr().err


def test_build_index_is_byte_deterministic(config_path, tmp_path, capsys):
    assert _build_index(config_path) == 0
    index_path = tmp_path / "schemaorg.swix"
    first = index_path.read_bytes()
    assert _build_index(config_path) == 0
    assert index_path.read_bytes() == first
    assert "indexed" in capsys.readouterr().out


def test_profile_prints_table_payloads(config_path, capsys):
    code = cli.main(["--config", str(config_path), "profile", "--db", str(MOVIEDB)])
    assert code == 0
    payloads = json.loads(capsys.readouterr().out)
    assert [p["table"] for p in payloads] == ["directors", "movies", "reviews"]
    assert payloads[1]["row_count"] == 4


def test_map_replay_reproduces_golden_bundle(config_path, tmp_path, capsys):
    assert _build_index(config_path) == 0
    before = hashlib.sha256(MOVIEDB.read_bytes()).hexdigest()
    code = cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB)])
    assert code == 0
    produced = (tmp_path / "out" / "moviedb.mapping").read_bytes()
    assert produced == (GOLDEN / "moviedb.mapping").read_bytes()
    report = json.loads((tmp_path / "out" / "moviedb.report").read_text())
    assert report["timing"]["tables"] == 3
    assert report["timing"]["columns"] == 10
    assert report["final_confidence"] == "MEDIUM"
    assert hashlib.sha256(MOVIEDB.read_bytes()).hexdigest() == before


def test_map_with_materialize_writes_golden_triples(config_path, tmp_path):
    assert _build_index(config_path) == 0
    code = cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB), "--materialize"])
    assert code == 0
    assert (tmp_path / "out" / "moviedb.nt").read_bytes() == (GOLDEN / "moviedb.nt").read_bytes()
    report = json.loads((tmp_path / "out" / "moviedb.report").read_text())
    assert report["materialization"] == {"triples": 39, "dangling_fks": 1, "unmapped_columns": 4}


def test_materialize_requires_existing_mapping(config_path, capsys):
    code = cli.main(["--config", str(config_path), "materialize", "--db", str(MOVIEDB)])
    assert code == 1
    assert capsys.readouterr().err.startswith("MappingNotFound:")


def test_materialize_after_map(config_path, tmp_path):
    assert _build_index(config_path) == 0
    assert cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB)]) == 0
    assert cli.main(["--config", str(config_path), "materialize", "--db", str(MOVIEDB)]) == 0
    assert (tmp_path / "out" / "moviedb.nt").read_bytes() == (GOLDEN / "moviedb.nt").read_bytes()


def test_eval_prints_accuracy_tables(config_path, tmp_path, capsys):
    assert _build_index(config_path) == 0
    assert cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB)]) == 0
    code = cli.main(["--config", str(config_path), "eval", "--db", str(MOVIEDB)])
    assert code == 0
    out = capsys.readouterr().out
    assert "86.67" in out
    assert "100.00" in out
    assert "moviedb" in out


def test_eval_missing_gold_exits_1(config_path, tmp_path, capsys):
    assert _build_index(config_path) == 0
    assert cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB)]) == 0
    config = json.loads(config_path.read_text())
    config["gold_dir"] = str(tmp_path / "no_gold_here")
    config_path.write_text(json.dumps(config))
    code = cli.main(["--config", str(config_path), "eval", "--db", str(MOVIEDB)])
    assert code == 1
    assert capsys.readouterr().err.startswith("GoldNotFound:")


def test_replay_backend_requires_transcript(config_path, tmp_path, capsys):
    config = json.loads(config_path.read_text())
    config["chat"]["transcript"] = str(tmp_path / "missing.json")
    config_path.write_text(json.dumps(config))
    _build_index(config_path)
    code = cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB)])
    assert code == 2
    assert "ConfigInvalid" in capsys.readouterr().err


def test_record_command_writes_transcript(config_path, tmp_path, monkeypatch):
    assert _build_index(config_path) == 0
    responses = [r["response"] for r in json.loads(TRANSCRIPT.read_text())["records"]]

    def fake_live(endpoint, model, auth_env, retries):
        return ScriptedBackend(responses)

    monkeypatch.setattr(cli, "LiveBackend", fake_live)
    config = json.loads(config_path.read_text())
    config["chat"] = {"mode": "live", "endpoint": "https://chat.test/v1", "model": "m", "auth_env": ""}
    config_path.write_text(json.dumps(config))

    recorded_path = tmp_path / "recorded.transcript.json"
    code = cli.main(
        ["--config", str(config_path), "record", "--db", str(MOVIEDB), "--transcript", str(recorded_path)]
    )
    assert code == 0
    recorded = json.loads(recorded_path.read_text())
    shipped = json.loads(TRANSCRIPT.read_text())
    assert recorded == shipped  # same prompts, same responses, same digests
    assert (tmp_path / "out" / "moviedb.mapping").read_bytes() == (GOLDEN / "moviedb.mapping").read_bytes()


def test_map_exit_codes_stable_across_runs(config_path):
    assert _build_index(config_path) == 0
    codes = {cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB)]) for _ in range(3)}
    assert codes == {0}


def test_fetch_vocab_delegates(monkeypatch, tmp_path, capsys):
    seen = {}

    def fake_fetch(version, dest):
        seen["version"] = version
        Path(dest).write_text("{}")
        return Path(dest)

    monkeypatch.setattr(cli, "fetch_release", fake_fetch)
    code = cli.main(["fetch-vocab", "--version", "29.2", "--dest", str(tmp_path / "v.jsonld")])
    assert code == 0
    assert seen["version"] == "29.2"


def test_unreadable_database_exits_1(config_path, tmp_path, capsys):
    _build_index(config_path)
    ghost = tmp_path / "ghost.sqlite"
    code = cli.main(["--config", str(config_path), "map", "--db", str(ghost)])
    assert code == 2  # path check happens at config validation time
    assert "ConfigInvalid" in capsys.readouterr().err


def test_interrupted_map_writes_partial_report(config_path, tmp_path, monkeypatch, capsys):
    assert _build_index(config_path) == 0

    class InterruptingBackend:
        fingerprint = "interrupting"

        def send(self, messages, response_format=None):
            raise KeyboardInterrupt

    monkeypatch.setattr(cli, "ReplayBackend", type("R", (), {"from_file": staticmethod(lambda path: InterruptingBackend())}))
    code = cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB)])
    assert code == 130
    partial = json.loads((tmp_path / "out" / "moviedb.partial.report").read_text())
    assert partial["status"] == "aborted"
    assert partial["failed_stage"] == "mapping"
    assert "profiles" in partial["completed_stages"]


def test_packaged_schemas_match_docs_copies():
    package_dir = Path(cli.__file__).resolve().parent / "schemas"
    docs_dir = Path(cli.__file__).resolve().parent.parent.parent / "docs" / "schemas"
    packaged = sorted(p.name for p in package_dir.glob("*.json"))
    published = sorted(p.name for p in docs_dir.glob("*.json"))
    assert packaged == published and packaged
    for name in packaged:
        assert (package_dir / name).read_bytes() == (docs_dir / name).read_bytes()


def test_eval_report_file_matches_stdout(config_path, tmp_path, capsys):
    assert _build_index(config_path) == 0
    assert cli.main(["--config", str(config_path), "map", "--db", str(MOVIEDB)]) == 0
    capsys.readouterr()  # drain build/map output
    report_file = tmp_path / "tables.txt"
    code = cli.main(
        ["--config", str(config_path), "eval", "--db", str(MOVIEDB), "--report-file", str(report_file)]
    )
    assert code == 0
    assert report_file.read_text() == capsys.readouterr().out
