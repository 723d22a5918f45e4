from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import isprime, multiplicity

from src.linalg.fq import ScalarField


class CapExceededError(RuntimeError):
    """Una clausura, enumeración o búsqueda supera su tope configurado."""

    def __init__(self, message: str, size: int):
        super().__init__(message)
        self.size = size


@dataclass(frozen=True, eq=False)
class MatGroup:
    """
    Grupo finito de matrices sobre F_q, con todos sus elementos explícitos.

    Los elementos se ordenan por su codificación canónica en bytes.
    """
    scalars: ScalarField = field(repr=False)
    elements: np.ndarray = field(repr=False)
    generators: np.ndarray = field(repr=False)
    keys: tuple[bytes, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.keys)

    @property
    def n(self) -> int:
        return self.elements.shape[-1]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"MatGroup(order={self.order}, n={self.n}, generators={len(self.generators)})"

    @cached_property
    def index(self) -> dict[bytes, int]:
        return {key: i for i, key in enumerate(self.keys)}

    @cached_property
    def identity_index(self) -> int:
        return self.index[self.scalars.key(self.scalars.identity(self.n))]

    def contains(self, M) -> bool:
        return self.scalars.key(M) in self.index

    def indices_of(self, batch: np.ndarray) -> np.ndarray:
        """Índices de un lote de matrices en el grupo (-1 si no pertenecen)."""
        batch = np.asarray(batch, dtype=np.int64)
        if len(batch) == 0:
            return np.zeros(0, dtype=np.int64)
        return np.array([self.index.get(k, -1) for k in self.scalars.keys(batch)], dtype=np.int64)

    def is_subgroup_of(self, other: MatGroup) -> bool:
        return self.n == other.n and all(k in other.index for k in self.keys)

    @cached_property
    def element_orders(self) -> np.ndarray:
        """Orden de cada elemento, calculado por potencias sucesivas en lote."""
        elements = self.elements
        identity = self.scalars.identity(self.n)
        orders = np.zeros(self.order, dtype=np.int64)
        current = elements.copy()
        done = np.all(current == identity, axis=(1, 2))
        orders[done] = 1
        pending = ~done
        k = 1
        while np.any(pending):
            k += 1
            if k > self.order:
                raise RuntimeError("orden de elemento mayor que el orden del grupo")
            current[pending] = self.scalars.matmul(current[pending], elements[pending])
            reached = pending & np.all(current == identity, axis=(1, 2))
            orders[reached] = k
            pending &= ~reached
        return orders

    @cached_property
    def inverse_indices(self) -> np.ndarray:
        inverses = self.scalars.batch_pow(self.elements, self.element_orders - 1)
        return self.indices_of(inverses)

    def inverse(self, i: int) -> np.ndarray:
        return self.elements[self.inverse_indices[i]]

    @property
    def exponent_max(self) -> int:
        return int(self.element_orders.max())

    def is_cyclic(self) -> bool:
        return self.exponent_max == self.order

    def is_abelian(self) -> bool:
        gens = self.generators
        left = self.scalars.matmul(gens[:, None], gens[None, :])
        right = self.scalars.matmul(gens[None, :], gens[:, None])
        return bool(np.array_equal(left, right))


def _as_batch(gens) -> np.ndarray:
    batch = np.asarray(gens, dtype=np.int64)
    if batch.ndim == 2:
        batch = batch[None]
    return batch


def group_from_elements(scalars: ScalarField, elements, generators) -> MatGroup:
    elements = _as_batch(elements)
    keys = scalars.keys(elements)
    order = sorted(range(len(keys)), key=keys.__getitem__)
    sorted_keys = tuple(keys[i] for i in order)
    if len(set(sorted_keys)) != len(sorted_keys):
        raise ValueError("elementos repetidos")
    return MatGroup(scalars, elements[order], _as_batch(generators), sorted_keys)


def closure(scalars: ScalarField, gens, cap: int) -> MatGroup:
    """
    Grupo generado por `gens`, por saturación en anchura de productos a derecha.

    Args:
        scalars (ScalarField): Escalares.
        gens: Secuencia no vacía de matrices invertibles n×n.
        cap (int): Tope de elementos.

    Returns:
        MatGroup: Grupo con orden de elementos determinista.

    Raises:
        ValueError: Generador singular o dimensiones inconsistentes.
        CapExceededError: Si el grupo supera `cap` elementos.
    """
    gens = _as_batch(gens)
    if gens.shape[0] == 0:
        raise ValueError("se necesita al menos un generador")
    if gens.shape[1] != gens.shape[2]:
        raise ValueError(f"generadores no cuadrados: {gens.shape[1:]}")
    for g in gens:
        if not scalars.is_invertible(g):
            raise ValueError(f"generador singular: {g.tolist()}")
    n = gens.shape[1]
    identity = scalars.identity(n)
    seen = {scalars.key(identity)}
    found = [identity[None]]
    frontier = identity[None]
    total = 1
    while len(frontier):
        fresh = []
        for g in gens:
            prods = scalars.matmul(frontier, g)
            new_rows = []
            for i, key in enumerate(scalars.keys(prods)):
                if key not in seen:
                    seen.add(key)
                    new_rows.append(i)
            if new_rows:
                fresh.append(prods[new_rows])
                total += len(new_rows)
                if total > cap:
                    logging.warning(f"Clausura interrumpida: {total} elementos superan el tope {cap}")
                    raise CapExceededError(f"el grupo supera el tope de {cap} elementos (parcial: {total})", total)
        frontier = np.concatenate(fresh) if fresh else np.zeros((0, n, n), dtype=np.int64)
        found.append(frontier)
    group = group_from_elements(scalars, np.concatenate(found), gens)
    logging.debug(f"Clausura con {len(gens)} generadores: orden {group.order}")
    return group


def subgroup_generated(g: MatGroup, gens) -> MatGroup:
    gens = _as_batch(gens)
    if len(gens) == 0:
        return trivial_group(g.scalars, g.n)
    return closure(g.scalars, gens, g.order)


def trivial_group(scalars: ScalarField, n: int) -> MatGroup:
    return closure(scalars, scalars.identity(n), 1)


def subgroup_from_indices(g: MatGroup, indices) -> MatGroup:
    """
    Subgrupo dado por índices de elementos de g (ya cerrado), con generadores elegidos
    vorazmente entre los elementos de mayor orden.
    """
    indices = np.asarray(sorted(int(i) for i in indices), dtype=np.int64)
    members = {g.keys[i] for i in indices}
    candidates = sorted(indices, key=lambda i: -g.element_orders[i])
    generators: list[int] = []
    current = {g.keys[g.identity_index]}
    for i in candidates:
        if len(current) == len(members):
            break
        if g.keys[i] not in current:
            generators.append(int(i))
            current = set(closure(g.scalars, g.elements[generators], len(members)).keys)
    if current != members:
        raise ValueError("los índices no forman un subgrupo")
    if not generators:
        generators = [g.identity_index]
    return MatGroup(g.scalars, g.elements[indices], g.elements[generators], tuple(g.keys[i] for i in indices))


def _check_inside(g: MatGroup, h: MatGroup) -> None:
    if not h.is_subgroup_of(g):
        raise ValueError("el subgrupo no está contenido en el grupo")


def conjugates(g: MatGroup, indices: np.ndarray, M) -> np.ndarray:
    """x M x⁻¹ para cada x = g.elements[i]."""
    X = g.elements[indices]
    Xinv = g.elements[g.inverse_indices[indices]]
    return g.scalars.matmul(g.scalars.matmul(X, np.asarray(M, dtype=np.int64)), Xinv)


def centralizer_in(g: MatGroup, h: MatGroup) -> MatGroup:
    """C_g(h), filtrando los elementos que conmutan con los generadores de h."""
    _check_inside(g, h)
    mask = np.ones(g.order, dtype=bool)
    for hg in h.generators:
        left = g.scalars.matmul(g.elements, hg)
        right = g.scalars.matmul(hg, g.elements)
        mask &= np.all(left == right, axis=(1, 2))
    return subgroup_from_indices(g, np.nonzero(mask)[0])


def normalizer_in(g: MatGroup, h: MatGroup) -> MatGroup:
    """N_g(h): elementos x con x h x⁻¹ ⊆ h."""
    _check_inside(g, h)
    all_indices = np.arange(g.order)
    mask = np.ones(g.order, dtype=bool)
    for hg in h.generators:
        conj = conjugates(g, all_indices, hg)
        mask &= h.indices_of(conj) >= 0
    return subgroup_from_indices(g, np.nonzero(mask)[0])


def derived_subgroup(g: MatGroup) -> MatGroup:
    """Clausura normal en g de los conmutadores de sus generadores."""
    s = g.scalars
    gens = g.generators
    inverses = np.array([s.inverse(x) for x in gens])
    comms = []
    identity = s.identity(g.n)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            c = s.matmul_chain(gens[i], gens[j], inverses[i], inverses[j])
            if not np.array_equal(c, identity):
                comms.append(c)
    if not comms:
        return trivial_group(s, g.n)
    K = closure(s, comms, g.order)
    changed = True
    while changed:
        changed = False
        for x, x_inv in zip(gens, inverses):
            conj = s.matmul(s.matmul(x, K.generators), x_inv)
            missing = conj[K.indices_of(conj) < 0]
            if len(missing):
                K = closure(s, np.concatenate([K.generators, missing]), g.order)
                changed = True
    return K


def derived_series(g: MatGroup) -> list[MatGroup]:
    series = [g]
    while series[-1].order > 1:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            break
        series.append(D)
    logging.debug(f"Serie derivada: {[h.order for h in series]}")
    return series


def is_solvable(g: MatGroup) -> bool:
    return derived_series(g)[-1].order == 1


def _is_power_of(values: np.ndarray, r: int) -> np.ndarray:
    values = values.copy()
    while True:
        divisible = (values % r == 0) & (values > 1)
        if not np.any(divisible):
            break
        values[divisible] //= r
    return values == 1


def sylow(g: MatGroup, r: int) -> MatGroup:
    """
    r-subgrupo de Sylow: se parte del r-elemento de mayor orden y se extiende con
    r-elementos que normalizan el subgrupo actual, hasta alcanzar la r-parte de |g|.

    Raises:
        ValueError: Si r no es primo o no divide |g|.
        RuntimeError: Si la extensión se estanca antes de la r-parte.
    """
    if not isprime(r) or g.order % r:
        raise ValueError(f"r = {r} no es un primo que divida |g| = {g.order}")
    target = r ** multiplicity(r, g.order)
    orders = g.element_orders
    r_elements = np.nonzero(_is_power_of(orders, r) & (orders > 1))[0]
    start = int(r_elements[np.argmax(orders[r_elements])])
    P = closure(g.scalars, g.elements[start], target)
    while P.order < target:
        candidates = np.array([i for i in r_elements if g.keys[i] not in P.index], dtype=np.int64)
        mask = np.ones(len(candidates), dtype=bool)
        for pg in P.generators:
            mask &= P.indices_of(conjugates(g, candidates, pg)) >= 0
        if not np.any(mask):
            raise RuntimeError(f"la búsqueda de Sylow-{r} se detuvo en orden {P.order} < {target}")
        x = g.elements[candidates[np.argmax(mask)]]
        P = closure(g.scalars, np.concatenate([P.generators, x[None]]), target)
    logging.debug(f"Sylow-{r}: orden {P.order}")
    return P


def cyclic_subgroups_of_order(g: MatGroup, k: int) -> list[MatGroup]:
    """Subgrupos cíclicos distintos de orden k."""
    seen: set[frozenset[bytes]] = set()
    result = []
    for i in np.nonzero(g.element_orders == k)[0]:
        C = closure(g.scalars, g.elements[i], k)
        signature = frozenset(C.keys)
        if signature not in seen:
            seen.add(signature)
            result.append(C)
    return result


@dataclass(frozen=True)
class StructureReport:
    """Resumen estructural de un grupo finito de matrices."""
    order: int
    involution_count: int
    involutions: tuple[tuple[int, ...], ...]
    is_cyclic: bool
    order_histogram: dict[int, int]
    sylow2_order: int
    sylow2_cyclic: bool
    order4_normalizers: tuple[int, ...]

    @property
    def unique_involution(self) -> bool:
        return self.involution_count == 1

    def summary(self) -> list[str]:
        return [
            f"orden = {self.order}",
            f"involuciones = {self.involution_count}",
            f"cíclico = {self.is_cyclic}",
            f"histograma de órdenes = {self.order_histogram}",
            f"Sylow-2: orden {self.sylow2_order}, cíclico = {self.sylow2_cyclic}",
            f"normalizadores de subgrupos de orden 4: {list(self.order4_normalizers)}",
        ]


def structure_probe(g: MatGroup) -> StructureReport:
    """
    Involuciones, ciclicidad, histograma de órdenes, Sylow-2 y órdenes de los
    normalizadores de los subgrupos cíclicos de orden 4.
    """
    orders = g.element_orders
    involution_indices = np.nonzero(orders == 2)[0]
    involutions = tuple(tuple(int(c) for c in g.elements[i].reshape(-1)) for i in involution_indices)
    histogram = dict(sorted(Counter(int(o) for o in orders).items()))
    if g.order % 2 == 0:
        P = sylow(g, 2)
        sylow2_order, sylow2_cyclic = P.order, P.is_cyclic()
    else:
        sylow2_order, sylow2_cyclic = 1, True
    normalizers = tuple(normalizer_in(g, C).order for C in cyclic_subgroups_of_order(g, 4))
    return StructureReport(
        order=g.order,
        involution_count=len(involution_indices),
        involutions=involutions,
        is_cyclic=g.is_cyclic(),
        order_histogram=histogram,
        sylow2_order=sylow2_order,
        sylow2_cyclic=sylow2_cyclic,
        order4_normalizers=normalizers,
    )
