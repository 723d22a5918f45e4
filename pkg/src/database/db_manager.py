import json
import sqlite3
from datetime import datetime
from pathlib import Path

from src.utils.settings import REPORTS_DB
from src.verify.report import VerifyReport


class ReportStore:
    """
    Guarda en SQLite las ejecuciones del verificador y sus comprobaciones.
    """
    def __init__(self, path: str | Path = REPORTS_DB):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._init_db()

    def _init_db(self):
        """Inicializa las tablas de ejecuciones y comprobaciones."""
        with sqlite3.connect(self.path) as conn:
            cursor = conn.cursor()
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS runs (
                    run_id INTEGER PRIMARY KEY AUTOINCREMENT,
                    created TEXT NOT NULL,
                    params TEXT NOT NULL,
                    summary TEXT NOT NULL
                )
            """)
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS checks (
                    row_id INTEGER PRIMARY KEY AUTOINCREMENT,
                    run_id INTEGER NOT NULL REFERENCES runs(run_id),
                    check_id TEXT NOT NULL,
                    p INTEGER NOT NULL,
                    a INTEGER NOT NULL,
                    m INTEGER NOT NULL,
                    status TEXT NOT NULL,
                    reason TEXT,
                    witnesses TEXT NOT NULL,
                    elapsed_ms REAL
                )
            """)
            conn.commit()

    def add_run(self, reports: list[VerifyReport]) -> int:
        """
        Registra una ejecución completa.

        Args:
            reports (list[VerifyReport]): Informes en el orden del registro.

        Returns:
            int: ID de la ejecución creada.
        """
        params = sorted({r.params for r in reports})
        summary = {status: sum(1 for r in reports if r.status.value == status) for status in ("pass", "fail", "skipped")}
        with sqlite3.connect(self.path) as conn:
            cursor = conn.cursor()
            cursor.execute(
                "INSERT INTO runs (created, params, summary) VALUES (?, ?, ?)",
                (datetime.now().isoformat(), json.dumps([list(t) for t in params]), json.dumps(summary))
            )
            if cursor.lastrowid is None:
                raise RuntimeError("No se pudo registrar la ejecución.")
            run_id = cursor.lastrowid
            cursor.executemany(
                "INSERT INTO checks (run_id, check_id, p, a, m, status, reason, witnesses, elapsed_ms) "
                "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)",
                [
                    (run_id, r.check_id, *r.params, r.status.value, r.reason,
                     json.dumps(list(r.witnesses), ensure_ascii=False), r.elapsed_ms)
                    for r in reports
                ]
            )
            conn.commit()
            return run_id

    def get_run(self, run_id: int) -> dict | None:
        """
        Obtiene una ejecución con todas sus comprobaciones.

        Args:
            run_id (int): ID de la ejecución.

        Returns:
            dict: Ejecución y comprobaciones, o None si no existe.
        """
        with sqlite3.connect(self.path) as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT run_id, created, params, summary FROM runs WHERE run_id = ?", (run_id,))
            row = cursor.fetchone()
            if not row:
                return None
            cursor.execute(
                "SELECT check_id, p, a, m, status, reason, witnesses, elapsed_ms "
                "FROM checks WHERE run_id = ? ORDER BY row_id",
                (run_id,)
            )
            checks = [
                {
                    "id": c[0],
                    "p": c[1],
                    "a": c[2],
                    "m": c[3],
                    "status": c[4],
                    "reason": c[5],
                    "witnesses": json.loads(c[6]),
                    "elapsed_ms": c[7],
                }
                for c in cursor.fetchall()
            ]
        return {
            "run_id": row[0],
            "created": row[1],
            "params": json.loads(row[2]),
            "summary": json.loads(row[3]),
            "checks": checks,
        }

    def list_runs(self) -> list[dict]:
        """Ejecuciones registradas, la más reciente primero (sin comprobaciones)."""
        with sqlite3.connect(self.path) as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT run_id, created, params, summary FROM runs ORDER BY run_id DESC")
            return [
                {"run_id": r[0], "created": r[1], "params": json.loads(r[2]), "summary": json.loads(r[3])}
                for r in cursor.fetchall()
            ]


if __name__ == "__main__":
    # Prueba básica
    from src.verify.report import CheckStatus

    store = ReportStore()
    run_id = store.add_run([VerifyReport("spread.valid", (3, 1, 1), CheckStatus.PASS, ("4 miembros",))])
    print(f"Ejecución registrada: ID {run_id}")
    print(f"Ejecución recuperada: {store.get_run(run_id)}")
