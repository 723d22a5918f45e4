from __future__ import annotations

import numpy as np

from src.field.tower import TowerCtx
from src.geometry.symplectic import extension_transvections
from src.groups.matgroup import MatGroup, closure
from src.linalg.fq import coordinate_space


def build_pi(ctx: TowerCtx) -> np.ndarray:
    """Matriz de π: x ↦ λ x^q."""
    lam = ctx.lam.value
    return coordinate_space(ctx).map_matrix(lambda xs: ctx.mul_values(lam, ctx.frobenius_values(xs, 1)))


def build_rho(ctx: TowerCtx) -> np.ndarray:
    """Matriz de ρ: x ↦ μ x."""
    mu = ctx.mu.value
    return coordinate_space(ctx).map_matrix(lambda xs: ctx.mul_values(mu, xs))


def build_metacyclic_group(ctx: TowerCtx, cap: int) -> MatGroup:
    """G = ⟨π, ρ⟩, de orden 2m(q^m+1)."""
    return closure(coordinate_space(ctx).scalars, [build_pi(ctx), build_rho(ctx)], cap)


def build_spread_isometry_group(ctx: TowerCtx, cap: int) -> MatGroup:
    """⟨SL(2, q^m), π, ρ⟩: isometrías que estabilizan el spread de reducción de cuerpo."""
    gens = extension_transvections(ctx) + [build_pi(ctx), build_rho(ctx)]
    return closure(coordinate_space(ctx).scalars, gens, cap)


def build_sl2(ctx: TowerCtx, cap: int) -> MatGroup:
    """Copia de SL(2, q^m) generada por las transvecciones F_{q^m}-lineales."""
    return closure(coordinate_space(ctx).scalars, extension_transvections(ctx), cap)
