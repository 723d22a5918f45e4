import json
from pathlib import Path

import pytest

from src.database.db_manager import ReportStore
from src.interface import cli
from src.utils.settings import DEFAULT_MATRIX

DATA = Path(__file__).parent / "data"


def test_help_and_usage_errors(capsys):
    assert cli.main(["--help"]) == 0
    assert cli.main(["frobnicate"]) == 2
    assert cli.main(["verify", "--check", "no.such.check", "--p", "3", "--a", "1", "--m", "1"]) == 2
    capsys.readouterr()


def test_tower_json(capsys):
    assert cli.main(["tower", "--p", "3", "--a", "1", "--m", "1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["modulus"] == [1, 0, 1]
    assert data["omega"] == [1, 1]
    assert data["q"] == 3


def test_tower_text(capsys):
    assert cli.main(["tower", "--p", "5", "--a", "1", "--m", "1"]) == 0
    out = capsys.readouterr().out
    assert "25 elementos" in out
    assert "modulus  (1, 1, 1)" in out


def test_construction_error(capsys):
    assert cli.main(["tower", "--p", "4", "--a", "1", "--m", "1"]) == 2
    assert "error:" in capsys.readouterr().err


def test_spread_build_stdout(capsys):
    assert cli.main(["spread", "build", "--p", "5", "--a", "1", "--m", "1"]) == 0
    assert capsys.readouterr().out == (DATA / "spread_5_1_1.txt").read_text(encoding="utf-8")


def test_spread_build_and_validate(tmp_path, capsys):
    out = tmp_path / "spread.txt"
    assert cli.main(["spread", "build", "--p", "3", "--a", "1", "--m", "2", "--out", str(out)]) == 0
    assert cli.main(["spread", "validate", "--in", str(out), "--json"]) == 0
    lines = capsys.readouterr().out.splitlines()
    document = json.loads("\n".join(lines[1:]))
    assert document["checks"][0]["status"] == "pass"


def test_spread_validate_failures(tmp_path, capsys):
    duplicated = tmp_path / "dup.txt"
    duplicated.write_text("3 1 1 3\n0 1,0\n1 1,0\n2 1,2\n3 1,1\n", encoding="utf-8")
    assert cli.main(["spread", "validate", "--in", str(duplicated)]) == 1
    assert "se cortan" in capsys.readouterr().out

    malformed = tmp_path / "bad.txt"
    malformed.write_text("3 1 1\n0 1,0\n", encoding="utf-8")
    assert cli.main(["spread", "validate", "--in", str(malformed)]) == 2
    assert cli.main(["spread", "validate", "--in", str(tmp_path / "missing.txt")]) == 2


def test_group_info(capsys):
    assert cli.main(["group", "info", "--p", "5", "--a", "1", "--m", "1", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["order"] == 12
    assert data["involutions"] == 1
    assert data["sylow2_order"] == 4 and data["sylow2_cyclic"]
    assert data["order4_normalizers"] == [4, 4, 4]


def test_verify_single_check(capsys):
    assert cli.main(["verify", "--check", "pi_rho.relation", "--p", "3", "--a", "1", "--m", "2"]) == 0
    assert "[PASS   ] pi_rho.relation (p=3, a=1, m=2)" in capsys.readouterr().out


def test_verify_check_requires_params(capsys):
    assert cli.main(["verify", "--check", "spread.valid"]) == 2
    assert "--p" in capsys.readouterr().err


def test_global_option_after_subcommand(capsys):
    args = ["verify", "--check", "sp.centralizer", "--p", "5", "--a", "1", "--m", "1",
            "--max-group-order", "10", "--json"]
    assert cli.main(args) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["checks"][0]["status"] == "skipped"
    assert cli.main(["verify", "--check", "spread.valid", "--p", "3", "--a", "1", "--m", "1",
                     "--max-group-order", "0"]) == 2


def test_verify_all_with_matrix_is_deterministic(tmp_path, capsys):
    matrix = tmp_path / "matrix.txt"
    matrix.write_text("# una sola terna\n3 1 1\n", encoding="utf-8")
    args = ["verify", "--all", "--matrix", str(matrix), "--json"]
    assert cli.main(args) == 0
    first = capsys.readouterr().out
    assert cli.main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    document = json.loads(first)
    assert document["version"] == "1"
    assert document["params"] == [[3, 1, 1]]
    assert all(check["elapsed_ms"] is None for check in document["checks"])


def test_verify_timings(capsys):
    args = ["verify", "--check", "spread.valid", "--p", "3", "--a", "1", "--m", "1", "--json", "--timings"]
    assert cli.main(args) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["checks"][0]["elapsed_ms"] is not None


def test_load_matrix(tmp_path):
    good = tmp_path / "m.txt"
    good.write_text("3 1 1  # comentario\n\n5 1 2\n", encoding="utf-8")
    assert cli.load_matrix(good) == [(3, 1, 1), (5, 1, 2)]
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n", encoding="utf-8")
    with pytest.raises(ValueError, match="bad.txt:1"):
        cli.load_matrix(bad)
    assert cli.main(["verify", "--all", "--matrix", str(bad)]) == 2


def test_verify_store(tmp_path, monkeypatch, capsys):
    db = tmp_path / "reports.db"
    monkeypatch.setattr(cli, "ReportStore", lambda: ReportStore(db))
    args = ["verify", "--check", "spread.valid", "--p", "3", "--a", "1", "--m", "1", "--store"]
    assert cli.main(args) == 0
    capsys.readouterr()
    runs = ReportStore(db).list_runs()
    assert len(runs) == 1
    assert runs[0]["summary"] == {"pass": 1, "fail": 0, "skipped": 0}


def test_verify_all_uses_default_matrix(monkeypatch, capsys):
    seen = []

    def fake_run_all(ctxs, caps):
        seen.extend((c.p, c.a, c.m) for c in ctxs)
        return []

    monkeypatch.setattr(cli, "run_all", fake_run_all)
    assert cli.main(["verify", "--all", "--json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert seen == list(DEFAULT_MATRIX)
    assert document["params"] == [list(t) for t in DEFAULT_MATRIX]
