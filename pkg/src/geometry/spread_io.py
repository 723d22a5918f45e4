from __future__ import annotations

from pathlib import Path

import numpy as np

from src.field.tower import make_tower
from src.geometry.spread import Spread
from src.linalg.fq import coordinate_space
from src.linalg.subspace import rref_subspace


def _code_digits(code: int, p: int, a: int) -> list[int]:
    return [(code // p ** k) % p for k in range(a)]


def format_spread(s: Spread) -> str:
    """
    Formato de texto: cabecera `p a m q` y una línea por miembro con su índice y sus m
    filas de base; cada fila es un token de 2m·a enteros separados por comas.
    """
    ctx = s.ctx
    lines = [f"{ctx.p} {ctx.a} {ctx.m} {ctx.q}"]
    for i, U in enumerate(s.members):
        tokens = []
        for row in U.basis:
            digits = [d for code in row for d in _code_digits(int(code), ctx.p, ctx.a)]
            tokens.append(",".join(str(d) for d in digits))
        lines.append(" ".join([str(i)] + tokens))
    return "\n".join(lines) + "\n"


def write_spread(path: str | Path, s: Spread) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_spread(s), encoding="utf-8")


def parse_spread(text: str, field_size_cap: int | None = None) -> Spread:
    """
    Lee un spread en el formato de `format_spread`.

    Raises:
        ValueError: Cabecera, índices o filas mal formados.
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("archivo de spread vacío")
    header = lines[0].split()
    if len(header) != 4 or not all(t.isdigit() for t in header):
        raise ValueError(f"cabecera inválida: {lines[0]!r}")
    p, a, m, q = (int(t) for t in header)
    if q != p ** a:
        raise ValueError(f"q = {q} no coincide con p^a = {p ** a}")
    ctx = make_tower(p, a, m, field_size_cap)
    scalars = coordinate_space(ctx).scalars
    weights = p ** np.arange(a, dtype=np.int64)
    members = []
    for line_no, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if fields[0] != str(len(members)):
            raise ValueError(f"línea {line_no}: índice {fields[0]!r}, se esperaba {len(members)}")
        rows = []
        for token in fields[1:]:
            try:
                digits = [int(t) for t in token.split(",")]
            except ValueError:
                raise ValueError(f"línea {line_no}: fila no numérica {token!r}") from None
            if len(digits) != ctx.n * a or any(d < 0 or d >= p for d in digits):
                raise ValueError(f"línea {line_no}: fila {token!r} no es un vector de F_q^{ctx.n}")
            rows.append(np.asarray(digits, dtype=np.int64).reshape(ctx.n, a) @ weights)
        members.append(rref_subspace(scalars, rows, ctx.n))
    return Spread(ctx, tuple(members))


def read_spread(path: str | Path, field_size_cap: int | None = None) -> Spread:
    return parse_spread(Path(path).read_text(encoding="utf-8"), field_size_cap)
