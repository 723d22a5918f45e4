from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from src.field.tower import TowerCtx
from src.geometry.symplectic import GramForm, is_totally_isotropic
from src.linalg.fq import coordinate_space
from src.linalg.subspace import Subspace, image, rref_subspace, subspace_vectors
from src.verify.report import CheckStatus, VerifyReport


@dataclass(frozen=True, eq=False)
class Spread:
    """
    Colección Ω de subespacios de V' = F_q^{2m}, indexada por el exponente i de ω^i·F_{q^m}.
    """
    ctx: TowerCtx = field(repr=False)
    members: tuple[Subspace, ...]

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def index(self) -> dict[bytes, int]:
        return {U.key: i for i, U in enumerate(self.members)}

    @cached_property
    def member_lookup(self) -> np.ndarray:
        """Índice de vector -> miembro que lo contiene (-1 para el vector nulo)."""
        space = coordinate_space(self.ctx)
        lookup = np.full(self.ctx.size, -1, dtype=np.int64)
        for i, U in enumerate(self.members):
            idx = space.vector_index(subspace_vectors(space.scalars, U))
            lookup[idx[idx != 0]] = i
        return lookup

    @cached_property
    def basis_stack(self) -> np.ndarray:
        return np.concatenate([U.basis for U in self.members])


@dataclass(frozen=True)
class SpreadAction:
    """Resultado de aplicar una matriz a un spread: permutación o miembro testigo no estabilizado."""
    permutation: tuple[int, ...] | None
    witness: int | None = None

    @property
    def stabilized(self) -> bool:
        return self.permutation is not None


def build_spread(ctx: TowerCtx) -> Spread:
    """
    Spread completo por reducción de cuerpo: los q^m+1 subespacios ω^i·F_{q^m}, 0 ≤ i ≤ q^m.

    Args:
        ctx (TowerCtx): Torre.

    Returns:
        Spread: Miembros canónicos ordenados por i.
    """
    space = coordinate_space(ctx)
    # Base de F_{q^m} sobre F_q: potencias de η = ω^{q^m+1}
    eta = ctx.omega_power(ctx.q ** ctx.m + 1).value
    sub_basis = np.array([ctx.pow_value(eta, k) for k in range(ctx.m)], dtype=np.int64)
    members = []
    for i in range(ctx.q ** ctx.m + 1):
        values = ctx.mul_values(ctx.omega_power(i).value, sub_basis)
        members.append(rref_subspace(space.scalars, space.coords_table[values], ctx.n))
    logging.debug(f"Spread de ({ctx.p},{ctx.a},{ctx.m}) con {len(members)} miembros")
    return Spread(ctx, tuple(members))


def _report(ctx: TowerCtx, status: CheckStatus, witnesses: list[str]) -> VerifyReport:
    return VerifyReport("spread.valid", (ctx.p, ctx.a, ctx.m), status, tuple(witnesses))


def validate_spread(s: Spread, form: GramForm) -> VerifyReport:
    """
    Comprueba número de miembros, dimensión, isotropía total, intersecciones triviales y
    cubrimiento; devuelve el primer contraejemplo si alguna falla.
    """
    ctx = s.ctx
    space = coordinate_space(ctx)
    scalars = space.scalars
    q, m, n = ctx.q, ctx.m, ctx.n
    expected = q ** m + 1
    if len(s.members) != expected:
        return _report(ctx, CheckStatus.FAIL, [f"se esperaban {expected} miembros, hay {len(s.members)}"])
    for i, U in enumerate(s.members):
        if U.dim != m:
            return _report(ctx, CheckStatus.FAIL, [f"miembro {i} tiene dimensión {U.dim}, se esperaba {m}"])
    for i, U in enumerate(s.members):
        if not is_totally_isotropic(U, form):
            values = scalars.matmul_chain(U.basis, form.gram, U.basis.T)
            j, k = (int(t) for t in np.argwhere(values != 0)[0])
            return _report(ctx, CheckStatus.FAIL, [
                f"miembro {i} no es totalmente isótropo: f({U.basis[j].tolist()}, {U.basis[k].tolist()}) = {int(values[j, k])}"
            ])
    for i in range(len(s.members)):
        for j in range(i + 1, len(s.members)):
            stacked = np.vstack([s.members[i].basis, s.members[j].basis])
            joint = scalars.rank(stacked)
            if joint != 2 * m:
                return _report(ctx, CheckStatus.FAIL, [
                    f"miembros {i} y {j} se cortan en dimensión {2 * m - joint}"
                ])
    covered = set()
    for U in s.members:
        covered.update(int(v) for v in space.vector_index(subspace_vectors(scalars, U)))
    if len(covered) != q ** n:
        return _report(ctx, CheckStatus.FAIL, [f"la unión cubre {len(covered)} de {q ** n} vectores"])
    return _report(ctx, CheckStatus.PASS, [
        f"{expected} miembros de dimensión {m}, totalmente isótropos, disjuntos dos a dos, "
        f"cubren los {q ** n} vectores"
    ])


def map_spread(M, s: Spread) -> SpreadAction:
    """
    Permutación inducida por M sobre los miembros, o el primer miembro cuya imagen no
    pertenece al spread.

    Raises:
        ValueError: Si M no es invertible.
    """
    scalars = coordinate_space(s.ctx).scalars
    M = np.asarray(M, dtype=np.int64)
    if not scalars.is_invertible(M):
        raise ValueError("la matriz no es invertible")
    permutation = []
    for i, U in enumerate(s.members):
        target = s.index.get(image(scalars, U, M).key)
        if target is None:
            return SpreadAction(None, i)
        permutation.append(target)
    return SpreadAction(tuple(permutation))


def fixed_members(M, s: Spread) -> frozenset[int]:
    """Ω_σ: índices de los miembros fijados por M."""
    action = map_spread(M, s)
    if not action.stabilized:
        raise ValueError(f"la matriz no estabiliza el spread (miembro {action.witness})")
    return frozenset(i for i, j in enumerate(action.permutation) if i == j)


def spread_permutations(s: Spread, mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Acción por lotes de matrices invertibles sobre un spread válido.

    Returns:
        tuple[np.ndarray, np.ndarray]: Permutaciones (N, |Ω|) y máscara de las que lo estabilizan.
    """
    space = coordinate_space(s.ctx)
    mats = np.asarray(mats, dtype=np.int64)
    if mats.ndim == 2:
        mats = mats[None]
    count, dim = len(s.members), s.ctx.m
    images = space.scalars.matmul(mats, s.basis_stack.T)
    targets = s.member_lookup[space.vector_index(np.swapaxes(images, 1, 2))]
    targets = targets.reshape(len(mats), count, dim)
    stabilizes = np.all(targets == targets[:, :, :1], axis=(1, 2)) & np.all(targets >= 0, axis=(1, 2))
    return targets[:, :, 0], stabilizes
