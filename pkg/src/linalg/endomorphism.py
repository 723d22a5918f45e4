from __future__ import annotations

import numpy as np

from src.linalg.fq import ScalarField
from src.linalg.polynomial import FqPoly


def minimal_polynomial(field_: ScalarField, M) -> FqPoly:
    """
    Polinomio mínimo mónico de M.

    Se acumulan las potencias I, M, M^2, ... (aplanadas) hasta la primera que depende
    linealmente de las anteriores; la relación de dependencia da los coeficientes.

    Args:
        field_ (ScalarField): Escalares.
        M: Matriz cuadrada sobre F_q.

    Returns:
        tuple[int, ...]: Coeficientes (grado menor primero), mónico, de grado ≤ n.
    """
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    powers = [field_.identity(n).reshape(-1)]
    current = field_.identity(n)
    for d in range(1, n + 1):
        current = field_.matmul(current, M)
        columns = np.stack(powers + [current.reshape(-1)], axis=1)
        null = field_.nullspace(columns)
        if len(null):
            relation = null[0]
            lead = int(relation[d])
            # la primera dependencia involucra a M^d con coeficiente no nulo
            relation = field_.mul(int(field_.inv(lead)), relation)
            return tuple(int(c) for c in relation)
        powers.append(current.reshape(-1))
    raise RuntimeError("no se encontró polinomio mínimo de grado ≤ n")


def commutant_dimension(field_: ScalarField, M) -> int:
    """Dimensión sobre F_q de {X : XM = MX}."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    units = np.zeros((n * n, n, n), dtype=np.int64)
    units[np.arange(n * n), np.arange(n * n) // n, np.arange(n * n) % n] = 1
    commutators = field_.sub(field_.matmul(units, M), field_.matmul(M, units))
    system = np.asarray(commutators, dtype=np.int64).reshape(n * n, n * n).T
    return n * n - field_.rank(system)


def matrix_order(field_: ScalarField, M, bound: int | None = None) -> int:
    """
    Orden multiplicativo de una matriz invertible.

    Raises:
        ValueError: Si no se alcanza la identidad antes de `bound` (por defecto q^n).
    """
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    identity = field_.identity(n)
    limit = bound if bound is not None else field_.q ** n
    current = M.copy()
    for k in range(1, limit + 1):
        if np.array_equal(current, identity):
            return k
        current = field_.matmul(current, M)
    raise ValueError(f"la matriz no tiene orden ≤ {limit}")
