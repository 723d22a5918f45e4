from __future__ import annotations

import numpy as np
from sympy import Poly, divisors, symbols

from src.field.tower import TowerCtx, subfield_elements
from src.linalg.fq import ScalarField, scalar_field

_X = symbols("x")

# Polinomios sobre F_q: tuplas de códigos, coeficiente de menor grado primero.
FqPoly = tuple[int, ...]


def trim(poly) -> FqPoly:
    coeffs = [int(c) for c in poly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(poly) -> int:
    return len(trim(poly)) - 1


def format_poly(poly) -> str:
    """Representación legible, p. ej. `x^2 + 4x + 2` (códigos de F_q como coeficientes)."""
    terms = []
    for k in range(len(poly) - 1, -1, -1):
        c = int(poly[k])
        if c == 0:
            continue
        base = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        coeff = str(c) if (c != 1 or k == 0) else ""
        terms.append(f"{coeff}{base}")
    return " + ".join(terms) if terms else "0"


def eval_at_matrix(field_: ScalarField, poly, M) -> np.ndarray:
    """s(M) por Horner."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    result = np.zeros((n, n), dtype=np.int64)
    for c in reversed(trim(poly)):
        result = field_.add(field_.matmul(result, M), field_.scalar_matrix(c, n))
    return np.asarray(result, dtype=np.int64)


def roots_in_base(field_: ScalarField, poly) -> list[int]:
    """Raíces en F_q, como códigos."""
    coeffs = trim(poly)
    xs = np.arange(field_.q, dtype=np.int64)
    acc = np.zeros_like(xs)
    for c in reversed(coeffs):
        acc = field_.add(field_.mul(acc, xs), c)
    return [int(x) for x in xs[np.asarray(acc) == 0]]


def is_irreducible(ctx: TowerCtx, poly) -> bool:
    """
    Irreducibilidad sobre F_q de un polinomio con coeficientes en códigos de F_q.

    Con a = 1 se delega en sympy. Con a > 1 se usa el criterio de raíces: un polinomio de
    grado d es irreducible si tiene una raíz en F_{q^d} que no está en ningún subcuerpo
    propio; requiere d | 2m para que F_{q^d} viva dentro de la torre.
    """
    coeffs = trim(poly)
    d = len(coeffs) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    if ctx.a == 1:
        return Poly(list(reversed(coeffs)), _X, modulus=ctx.p).is_irreducible
    if ctx.n % d:
        raise ValueError(f"grado {d} no divide 2m = {ctx.n}; F_{{q^{d}}} no está en la torre")
    field_ = scalar_field(ctx)
    values = np.array([x.value for x in subfield_elements(ctx, d)], dtype=np.int64)
    acc = np.zeros_like(values)
    for c in reversed(coeffs):
        acc = ctx.add_values(ctx.mul_values(acc, values), int(field_.values[c]))
    roots = values[np.asarray(acc) == 0]
    proper = [e for e in divisors(d) if e < d]
    for root in roots:
        if all(int(ctx.frobenius_values(root, e)) != int(root) for e in proper):
            return True
    return False
