from src.database.db_manager import ReportStore
from src.verify.report import CheckStatus, VerifyReport


def _reports():
    return [
        VerifyReport("spread.valid", (3, 1, 1), CheckStatus.PASS, ("4 miembros",)).with_elapsed(1.5),
        VerifyReport("G.structure", (3, 1, 1), CheckStatus.SKIPPED, reason="q ≡ 3 (mod 4)"),
        VerifyReport("G.transitive", (5, 1, 1), CheckStatus.FAIL, ("órbitas [3, 3]",)),
    ]


def test_add_and_get_run(tmp_path):
    store = ReportStore(tmp_path / "sub" / "reports.db")
    run_id = store.add_run(_reports())
    run = store.get_run(run_id)
    assert run["params"] == [[3, 1, 1], [5, 1, 1]]
    assert run["summary"] == {"pass": 1, "fail": 1, "skipped": 1}
    assert [c["id"] for c in run["checks"]] == ["spread.valid", "G.structure", "G.transitive"]
    first, skipped, failed = run["checks"]
    assert first["witnesses"] == ["4 miembros"] and first["elapsed_ms"] == 1.5
    assert skipped["reason"] == "q ≡ 3 (mod 4)" and skipped["elapsed_ms"] is None
    assert failed["status"] == "fail" and failed["p"] == 5


def test_missing_run(tmp_path):
    assert ReportStore(tmp_path / "reports.db").get_run(42) is None


def test_list_runs_newest_first(tmp_path):
    store = ReportStore(tmp_path / "reports.db")
    first = store.add_run(_reports()[:1])
    second = store.add_run(_reports())
    runs = store.list_runs()
    assert [r["run_id"] for r in runs] == [second, first]
    assert "checks" not in runs[0]
