from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum

SCHEMA_VERSION = "1"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class VerifyReport:
    """
    Resultado estructurado de una comprobación.

    Un `fail` lleva siempre al menos un testigo; un `skipped`, siempre un motivo.
    """
    check_id: str
    params: tuple[int, int, int]
    status: CheckStatus
    witnesses: tuple[str, ...] = ()
    reason: str | None = None
    elapsed_ms: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.status is CheckStatus.FAIL and not self.witnesses:
            raise ValueError(f"{self.check_id}: un fallo debe llevar al menos un testigo")
        if self.status is CheckStatus.SKIPPED and not self.reason:
            raise ValueError(f"{self.check_id}: una comprobación omitida debe llevar motivo")

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    def with_elapsed(self, elapsed_ms: float) -> VerifyReport:
        return replace(self, elapsed_ms=elapsed_ms)

    def to_dict(self, timings: bool = False) -> dict:
        p, a, m = self.params
        return {
            "id": self.check_id,
            "p": p,
            "a": a,
            "m": m,
            "status": self.status.value,
            "reason": self.reason,
            "witnesses": list(self.witnesses),
            "elapsed_ms": round(self.elapsed_ms, 3) if (timings and self.elapsed_ms is not None) else None,
        }

    def describe(self) -> str:
        p, a, m = self.params
        line = f"[{self.status.value.upper():7}] {self.check_id} (p={p}, a={a}, m={m})"
        if self.reason:
            line += f" - {self.reason}"
        return line


def report_document(params, reports, timings: bool = False) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "params": [list(t) for t in params],
        "checks": [r.to_dict(timings) for r in reports],
    }


def render_json(params, reports, timings: bool = False) -> str:
    """JSON determinista del informe: mismas entradas, mismos bytes."""
    return json.dumps(report_document(params, reports, timings), indent=2, ensure_ascii=False)


def exit_code(reports) -> int:
    """0 si no hay fallos, 1 en caso contrario."""
    return 1 if any(r.status is CheckStatus.FAIL for r in reports) else 0
