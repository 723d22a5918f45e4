import json

import pytest

from src.utils.settings import DEFAULT_MATRIX, Caps
from src.verify.checks import CHECKS, Check
from src.verify.report import CheckStatus, VerifyReport, exit_code, render_json, report_document
from src.verify.runner import run_all, run_check
from src.verify.workbench import Workbench
from tests.conftest import CAPS, tower

CHECK_IDS = [
    "spread.valid", "form.nondegenerate", "form.field_reduction", "pi_rho.isometry",
    "pi_rho.relation", "pi_rho.orders", "G.structure", "G.sylow2_remark", "G.transitive",
    "spread.sl2_transitive", "zsig.irreducible", "zsig.commutant", "sp.centralizer",
    "sp.normalizer", "eig.decompose", "eig.dims", "fix.count", "exception.q5", "fermat.flag",
]


def test_registry_order():
    assert list(CHECKS) == CHECK_IDS
    assert all(check.claim for check in CHECKS.values())


def _run(check_id, p, a, m, caps=CAPS):
    return run_check(check_id, tower(p, a, m), caps)


@pytest.mark.parametrize("check_id", [
    "spread.valid", "form.nondegenerate", "form.field_reduction", "pi_rho.isometry",
    "pi_rho.relation", "pi_rho.orders", "G.structure", "G.transitive",
])
def test_basic_checks_pass_for_3_1_2(check_id):
    report = _run(check_id, 3, 1, 2)
    assert report.status is CheckStatus.PASS, report.witnesses
    assert report.params == (3, 1, 2)
    assert report.elapsed_ms is not None


def test_transitivity_is_reported_with_orbit_sizes():
    report = _run("G.transitive", 5, 1, 1)
    assert report.status is CheckStatus.PASS
    assert report.witnesses == ("esperado = False, observado = False", "tamaños de órbita = [3, 3]")


def test_structure_skipped_for_quaternion_case():
    report = _run("G.structure", 3, 1, 1)
    assert report.status is CheckStatus.SKIPPED
    assert "Sylow-2 de orden 8, cíclico = False" in report.reason
    remark = _run("G.sylow2_remark", 3, 1, 1)
    assert remark.status is CheckStatus.PASS


def test_skips_without_zsigmondy_primes():
    for check_id in ("zsig.irreducible", "zsig.commutant", "sp.centralizer", "sp.normalizer"):
        report = _run(check_id, 3, 1, 1)
        assert report.status is CheckStatus.SKIPPED
        assert "Zsigmondy" in report.reason


def test_sp_checks_skip_over_cap():
    report = _run("sp.centralizer", 5, 1, 2)
    assert report.status is CheckStatus.SKIPPED
    assert "9360000" in report.reason


def test_zsigmondy_checks_use_rho_power_over_cap():
    report = _run("zsig.irreducible", 5, 1, 2)
    assert report.status is CheckStatus.PASS
    assert "ρ^2" in report.witnesses[0]


def test_sp_checks_on_sp_2_5():
    for check_id in ("sp.centralizer", "sp.normalizer", "zsig.irreducible", "zsig.commutant"):
        assert _run(check_id, 5, 1, 1).status is CheckStatus.PASS


@pytest.mark.slow
def test_sp_normalizer_on_sp_4_3():
    report = _run("sp.normalizer", 3, 1, 2)
    assert report.status is CheckStatus.PASS
    assert "|N_S(R)| = 40" in report.witnesses[0]


def test_eigen_checks():
    assert _run("eig.decompose", 3, 1, 1).status is CheckStatus.SKIPPED
    assert _run("eig.decompose", 13, 1, 1).status is CheckStatus.PASS
    assert _run("eig.dims", 5, 1, 1).status is CheckStatus.PASS
    report = _run("fix.count", 5, 1, 1)
    assert report.status is CheckStatus.PASS
    assert "permitidos = [2]" in report.witnesses[1]


@pytest.mark.slow
def test_fix_count_with_even_m():
    report = _run("fix.count", 5, 1, 2)
    assert report.status is CheckStatus.PASS
    assert "permitidos = [2, 6]" in report.witnesses[1]


def test_exception_q5_only_for_q5():
    report = _run("exception.q5", 3, 1, 1)
    assert report.status is CheckStatus.SKIPPED


@pytest.mark.slow
def test_exception_q5():
    report = _run("exception.q5", 5, 1, 1)
    assert report.status is CheckStatus.PASS, report.witnesses
    assert report.witnesses[-1].endswith("[]")


def test_fermat_flag():
    report = _run("fermat.flag", 3, 1, 1)
    assert report.status is CheckStatus.PASS
    assert any("Fermat): False" in w for w in report.witnesses)
    flagged = _run("fermat.flag", 5, 1, 1)
    assert any("Fermat): True" in w for w in flagged.witnesses)


def test_unknown_check():
    with pytest.raises(ValueError, match="desconocida"):
        _run("no.such.check", 3, 1, 1)


def test_unexpected_exception_becomes_failure(monkeypatch):
    def explode(wb):
        raise RuntimeError("kaput")

    monkeypatch.setitem(CHECKS, "boom", Check("boom", "siempre falla", explode))
    report = _run("boom", 3, 1, 1)
    assert report.status is CheckStatus.FAIL
    assert report.witnesses == ("excepción RuntimeError: kaput",)
    assert exit_code([report]) == 1


def test_group_cap_turns_into_skip():
    report = run_check("G.structure", tower(5, 1, 1), Caps(max_group_order=5))
    assert report.status is CheckStatus.SKIPPED
    assert "tope" in report.reason


def test_shared_workbench():
    ctx = tower(5, 1, 1)
    wb = Workbench(ctx, CAPS)
    first = run_check("G.transitive", ctx, CAPS, wb)
    second = run_check("G.structure", ctx, CAPS, wb)
    assert first.passed and second.passed
    assert wb.G is wb.G


def test_report_invariants():
    with pytest.raises(ValueError):
        VerifyReport("x", (3, 1, 1), CheckStatus.FAIL)
    with pytest.raises(ValueError):
        VerifyReport("x", (3, 1, 1), CheckStatus.SKIPPED)
    ok = VerifyReport("x", (3, 1, 1), CheckStatus.PASS)
    assert ok.passed and exit_code([ok]) == 0
    assert ok.describe() == "[PASS   ] x (p=3, a=1, m=1)"


def test_json_document():
    report = VerifyReport("x", (3, 1, 1), CheckStatus.SKIPPED, reason="no aplica").with_elapsed(1.23456)
    plain = report_document([(3, 1, 1)], [report])
    assert plain == {
        "version": "1",
        "params": [[3, 1, 1]],
        "checks": [{
            "id": "x", "p": 3, "a": 1, "m": 1, "status": "skipped",
            "reason": "no aplica", "witnesses": [], "elapsed_ms": None,
        }],
    }
    timed = json.loads(render_json([(3, 1, 1)], [report], timings=True))
    assert timed["checks"][0]["elapsed_ms"] == 1.235


def test_run_all_is_deterministic():
    ctxs = [tower(3, 1, 1), tower(7, 1, 1)]
    params = [(3, 1, 1), (7, 1, 1)]
    first = run_all(ctxs, CAPS)
    second = run_all(ctxs, CAPS)
    assert len(first) == 2 * len(CHECKS)
    assert [r.check_id for r in first[:len(CHECKS)]] == CHECK_IDS
    assert render_json(params, first) == render_json(params, second)
    assert run_all([], CAPS) == []


@pytest.mark.slow
def test_default_matrix_has_no_failures():
    reports = run_all([tower(*t) for t in DEFAULT_MATRIX], CAPS)
    failures = [(r.check_id, r.params, r.witnesses) for r in reports if r.status is CheckStatus.FAIL]
    assert failures == []
    assert exit_code(reports) == 0
    transitive = {r.params: r for r in reports if r.check_id == "G.transitive"}
    assert all(r.passed for r in transitive.values())
