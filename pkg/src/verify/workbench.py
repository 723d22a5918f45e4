from __future__ import annotations

import logging
from functools import cached_property

import numpy as np

from src.field.tower import TowerCtx
from src.geometry.spread import Spread, build_spread
from src.geometry.symplectic import GramForm, enumerate_sp, gram_from_trace_form
from src.groups.action import setwise_stabilizer
from src.groups.matgroup import CapExceededError, MatGroup, sylow
from src.groups.model import build_metacyclic_group, build_pi, build_rho, build_spread_isometry_group
from src.linalg.fq import CoordinateSpace, ScalarField, coordinate_space
from src.numtheory.zsigmondy import ZsigResult, zsigmondy_primes
from src.utils.settings import Caps


class Workbench:
    """
    Artefactos compartidos por las comprobaciones de una torre: forma, spread, π, ρ, G y,
    si cabe en el tope, Sp(2m, q). Cada artefacto se construye una sola vez.
    """

    def __init__(self, ctx: TowerCtx, caps: Caps):
        self.ctx = ctx
        self.caps = caps

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.ctx.p, self.ctx.a, self.ctx.m)

    @cached_property
    def space(self) -> CoordinateSpace:
        return coordinate_space(self.ctx)

    @property
    def scalars(self) -> ScalarField:
        return self.space.scalars

    @cached_property
    def form(self) -> GramForm:
        return gram_from_trace_form(self.ctx)

    @cached_property
    def spread(self) -> Spread:
        return build_spread(self.ctx)

    @cached_property
    def pi(self) -> np.ndarray:
        return build_pi(self.ctx)

    @cached_property
    def rho(self) -> np.ndarray:
        return build_rho(self.ctx)

    @cached_property
    def minus_identity(self) -> np.ndarray:
        return self.scalars.scalar_matrix(int(self.scalars.neg(1)), self.ctx.n)

    @cached_property
    def G(self) -> MatGroup:
        return build_metacyclic_group(self.ctx, self.caps.max_group_order)

    @cached_property
    def _sp(self) -> MatGroup | CapExceededError:
        try:
            return enumerate_sp(self.ctx, self.caps.max_group_order)
        except CapExceededError as exc:
            logging.info(f"Sp omitido para {self.params}: {exc}")
            return exc

    @property
    def sp(self) -> MatGroup:
        """Sp(2m, q) enumerado; relanza CapExceededError si supera el tope."""
        if isinstance(self._sp, CapExceededError):
            raise self._sp
        return self._sp

    @property
    def sp_available(self) -> bool:
        return not isinstance(self._sp, CapExceededError)

    @cached_property
    def spread_group(self) -> MatGroup:
        return build_spread_isometry_group(self.ctx, self.caps.max_group_order)

    @cached_property
    def zsig(self) -> ZsigResult:
        return zsigmondy_primes(self.ctx.q, self.ctx.n)

    def symplectic_scope(self) -> tuple[MatGroup, str]:
        """Grupo de isometrías enumerable: Sp(2m, q) o, si no cabe, ⟨SL(2, q^m), π, ρ⟩."""
        if self.sp_available:
            return self.sp, f"Sp({self.ctx.n},{self.ctx.q})"
        return self.spread_group, f"<SL(2,{self.ctx.q ** self.ctx.m}), π, ρ> (Sp supera el tope)"

    @cached_property
    def spread_stabilizer_scope(self) -> tuple[MatGroup, str]:
        """Estabilizador del spread dentro del alcance enumerable."""
        group, name = self.symplectic_scope()
        if self.sp_available:
            return setwise_stabilizer(group, self.spread), f"estabilizador del spread en {name}"
        return group, name

    def minus_identity_roots(self, group: MatGroup) -> np.ndarray:
        """Índices de los σ con σ² = -I."""
        squares = self.scalars.matmul(group.elements, group.elements)
        return np.nonzero(np.all(squares == self.minus_identity, axis=(1, 2)))[0]

    def zsigmondy_element(self, r: int) -> tuple[np.ndarray, str]:
        """
        Elemento isométrico de orden r: de un Sylow-r de Sp si cabe en el tope, o
        ρ^{(q^m+1)/r} en otro caso. Devuelve también el alcance usado.
        """
        if self.sp_available:
            P = sylow(self.sp, r)
            element = P.elements[np.argmax(P.element_orders == r)]
            return element, f"Sylow-{r} de Sp({self.ctx.n},{self.ctx.q})"
        exponent = (self.ctx.q ** self.ctx.m + 1) // r
        return self.scalars.mat_pow(self.rho, exponent), f"ρ^{exponent} (Sp supera el tope)"

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.caps.seed)
