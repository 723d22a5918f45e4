from __future__ import annotations

import logging
import time

from src.field.tower import TowerCtx
from src.groups.matgroup import CapExceededError
from src.utils.settings import Caps
from src.verify.checks import CHECKS, CheckSkipped
from src.verify.report import CheckStatus, VerifyReport
from src.verify.workbench import Workbench


def run_check(check_id: str, ctx: TowerCtx, caps: Caps, workbench: Workbench | None = None) -> VerifyReport:
    """
    Ejecuta una comprobación registrada.

    Args:
        check_id (str): Identificador del registro.
        ctx (TowerCtx): Torre.
        caps (Caps): Topes de cómputo.
        workbench (Workbench, optional): Artefactos ya construidos para `ctx`.

    Returns:
        VerifyReport: `skipped` si no aplica o supera un tope; `fail` si la afirmación no
        se cumple o la comprobación lanza una excepción inesperada.

    Raises:
        ValueError: Si el identificador no está registrado.
    """
    if check_id not in CHECKS:
        raise ValueError(f"comprobación desconocida: {check_id!r}; disponibles: {', '.join(CHECKS)}")
    wb = workbench if workbench is not None else Workbench(ctx, caps)
    params = (ctx.p, ctx.a, ctx.m)
    start = time.perf_counter()
    try:
        ok, witnesses = CHECKS[check_id].run(wb)
        status = CheckStatus.PASS if ok else CheckStatus.FAIL
        report = VerifyReport(check_id, params, status, tuple(witnesses))
    except CheckSkipped as exc:
        report = VerifyReport(check_id, params, CheckStatus.SKIPPED, reason=str(exc))
    except CapExceededError as exc:
        report = VerifyReport(check_id, params, CheckStatus.SKIPPED, reason=str(exc))
    except Exception as exc:
        logging.error(f"Error en {check_id} {params}: {exc}")
        report = VerifyReport(check_id, params, CheckStatus.FAIL, (f"excepción {type(exc).__name__}: {exc}",))
    elapsed_ms = (time.perf_counter() - start) * 1000
    logging.info(f"{check_id} {params}: {report.status.value} ({elapsed_ms:.1f} ms)")
    return report.with_elapsed(elapsed_ms)


def run_all(ctx_list, caps: Caps) -> list[VerifyReport]:
    """Todo el registro, en orden, para cada torre; un solo Workbench por torre."""
    reports = []
    for ctx in ctx_list:
        wb = Workbench(ctx, caps)
        for check_id in CHECKS:
            reports.append(run_check(check_id, ctx, caps, wb))
    return reports
