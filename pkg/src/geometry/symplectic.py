from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from math import prod

import numpy as np

from src.field.tower import TowerCtx
from src.groups.matgroup import CapExceededError, MatGroup, closure
from src.linalg.fq import ScalarField, coordinate_space
from src.linalg.subspace import Subspace


@dataclass(frozen=True, eq=False)
class GramForm:
    """
    Forma bilineal sobre F_q^{2m} dada por su matriz de Gram G[i][j] = f(ω^i, ω^j).
    """
    gram: np.ndarray
    scalars: ScalarField = field(repr=False)

    @property
    def n(self) -> int:
        return self.gram.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GramForm):
            return NotImplemented
        return np.array_equal(self.gram, other.gram)

    __hash__ = None

    def evaluate(self, u, v) -> int:
        """f(u, v) = uᵀ G v."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        return int(self.scalars.matmul(self.scalars.matmul(u[None, :], self.gram), v[:, None])[0, 0])

    def is_alternating(self) -> bool:
        G = self.gram
        return bool(np.all(np.diag(G) == 0) and np.array_equal(G.T, self.scalars.neg(G)))

    def is_nondegenerate(self) -> bool:
        return self.scalars.is_invertible(self.gram)


def _trace_values(ctx: TowerCtx, values, degree: int):
    """Σ_{k<degree} x^{q^k} sobre un arreglo de codificaciones."""
    acc = np.zeros_like(np.asarray(values, dtype=np.int64))
    for k in range(degree):
        acc = ctx.add_values(acc, ctx.frobenius_values(values, k))
    return acc


def _to_gram(ctx: TowerCtx, values) -> GramForm:
    scalars = coordinate_space(ctx).scalars
    codes = scalars.code_of_value[np.asarray(values, dtype=np.int64)]
    if np.any(codes < 0):
        raise RuntimeError("la forma no toma valores en F_q")
    return GramForm(np.asarray(codes, dtype=np.int64), scalars)


def gram_from_trace_form(ctx: TowerCtx) -> GramForm:
    """
    Matriz de Gram de f(x, y) = Tr(ε x y^{q^m}) en la base de potencias de ω.

    Args:
        ctx (TowerCtx): Torre.

    Returns:
        GramForm: Forma alternada y no degenerada.
    """
    basis = ctx.exp_table[:ctx.n]
    conj = ctx.frobenius_values(basis, ctx.m)
    values = ctx.mul_values(ctx.epsilon.value, ctx.mul_values(basis[:, None], conj[None, :]))
    return _to_gram(ctx, _trace_values(ctx, values, ctx.n))


def extension_form_values(ctx: TowerCtx, x, y):
    """F(x, y) = ε(x y^{q^m} - x^{q^m} y), forma alternada con valores en F_{q^m}."""
    m = ctx.m
    left = ctx.mul_values(x, ctx.frobenius_values(y, m))
    right = ctx.mul_values(ctx.frobenius_values(x, m), y)
    return ctx.mul_values(ctx.epsilon.value, ctx.sub_values(left, right))


def gram_from_field_reduction(ctx: TowerCtx) -> GramForm:
    """
    Forma g = Tr_{q^m→q} ∘ F, obtenida viendo F_{q^{2m}} como plano sobre F_{q^m}.

    Coincide exactamente con `gram_from_trace_form`.
    """
    basis = ctx.exp_table[:ctx.n]
    values = extension_form_values(ctx, basis[:, None], basis[None, :])
    return _to_gram(ctx, _trace_values(ctx, values, ctx.m))


def is_isometry(M, form: GramForm) -> bool:
    """Mᵀ G M = G."""
    M = np.asarray(M, dtype=np.int64)
    s = form.scalars
    return bool(np.array_equal(s.matmul_chain(M.T, form.gram, M), form.gram))


def are_isometries(mats: np.ndarray, form: GramForm) -> np.ndarray:
    """Versión por lotes de `is_isometry`."""
    mats = np.asarray(mats, dtype=np.int64)
    s = form.scalars
    conj = s.matmul(s.matmul(np.swapaxes(mats, -1, -2), form.gram), mats)
    return np.all(conj == form.gram, axis=(-1, -2))


def adjoint(M, form: GramForm) -> np.ndarray:
    """M* = G⁻¹ Mᵀ G, de modo que f(M* u, v) = f(u, M v)."""
    s = form.scalars
    M = np.asarray(M, dtype=np.int64)
    return s.matmul_chain(s.inverse(form.gram), M.T, form.gram)


def is_totally_isotropic(U: Subspace, form: GramForm) -> bool:
    if U.dim == 0:
        return True
    s = form.scalars
    return not np.any(s.matmul_chain(U.basis, form.gram, U.basis.T))


def transvection(form: GramForm, v, c: int) -> np.ndarray:
    """Matriz de x ↦ x + c·f(x, v)·v, es decir I + c·v (Gv)ᵀ."""
    s = form.scalars
    v = np.asarray(v, dtype=np.int64)
    w = s.matmul(form.gram, v[:, None])[:, 0]
    rank_one = s.mul(int(c), s.mul(v[:, None], w[None, :]))
    return np.asarray(s.add(s.identity(form.n), rank_one), dtype=np.int64)


def sp_order(q: int, m: int) -> int:
    """|Sp(2m, q)| = q^{m²} ∏_{i=1..m} (q^{2i} - 1)."""
    return q ** (m * m) * prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def symplectic_transvections(form: GramForm) -> list[np.ndarray]:
    """
    Transvecciones con v en los vectores 0/1 no nulos (la base y sus sumas) y c en F_q*:
    (2^{2m} - 1)(q - 1) generadores.
    """
    gens = []
    for v in product((0, 1), repeat=form.n):
        if any(v):
            for c in form.scalars.nonzero():
                gens.append(transvection(form, v, c))
    return gens


def enumerate_sp(ctx: TowerCtx, cap: int) -> MatGroup:
    """
    Enumera Sp(2m, q) como clausura de transvecciones.

    Raises:
        CapExceededError: Si el orden clásico supera `cap` (antes de cerrar).
        RuntimeError: Si la clausura no alcanza el orden clásico.
    """
    required = sp_order(ctx.q, ctx.m)
    if required > cap:
        raise CapExceededError(f"|Sp({ctx.n},{ctx.q})| = {required} supera el tope {cap}", required)
    form = gram_from_trace_form(ctx)
    group = closure(form.scalars, symplectic_transvections(form), cap)
    if group.order != required:
        raise RuntimeError(f"la clausura dio orden {group.order}, se esperaba {required}")
    logging.info(f"Sp({ctx.n},{ctx.q}) enumerado: {group.order} elementos")
    return group


def extension_transvections(ctx: TowerCtx) -> list[np.ndarray]:
    """
    Transvecciones F_{q^m}-lineales x ↦ x + c·F(x, v)·v para v ∈ {1, ω} y c en una
    base de F_{q^m} sobre F_p. Generan la copia de SL(2, q^m) que actúa por isometrías.
    """
    space = coordinate_space(ctx)
    eta = ctx.omega_power(ctx.q ** ctx.m + 1).value
    mats = []
    for v in (ctx.one.value, ctx.omega.value):
        for k in range(ctx.a * ctx.m):
            c = ctx.pow_value(eta, k)

            def fn(xs, v=v, c=c):
                scale = ctx.mul_values(c, extension_form_values(ctx, xs, v))
                return ctx.add_values(xs, ctx.mul_values(scale, v))

            mats.append(space.map_matrix(fn))
    return mats
