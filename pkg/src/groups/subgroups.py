from __future__ import annotations

import logging

import numpy as np

from src.groups.matgroup import CapExceededError, MatGroup, subgroup_from_indices


def cayley_table(g: MatGroup) -> np.ndarray:
    """Tabla (|g|, |g|) de índices de productos x_i x_j."""
    table = np.empty((g.order, g.order), dtype=np.int64)
    for i in range(g.order):
        table[i] = g.indices_of(g.scalars.matmul(g.elements[i], g.elements))
    if np.any(table < 0):
        raise RuntimeError("el conjunto de elementos no es cerrado")
    return table


def _close(table: np.ndarray, identity: int, gens: list[int]) -> frozenset[int]:
    members = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for x in frontier:
            for gen in gens:
                y = int(table[x, gen])
                if y not in members:
                    members.add(y)
                    fresh.append(y)
        frontier = fresh
    return frozenset(members)


def _subgroup_lattice(g: MatGroup, n: int, budget: int) -> dict[frozenset[int], list[int]]:
    """
    Todos los subgrupos de g cuyo orden divide n, como uniones iteradas de subgrupos
    cíclicos; cada subgrupo se guarda con una lista de generadores.
    """
    if g.order > budget:
        raise CapExceededError(
            f"|g| = {g.order} supera el tope de búsqueda de subgrupos ({budget})", g.order
        )
    table = cayley_table(g)
    identity = g.identity_index
    cyclic: dict[frozenset[int], int] = {}
    for i in range(g.order):
        if n % int(g.element_orders[i]) == 0:
            C = _close(table, identity, [i])
            cyclic.setdefault(C, i)
    found: dict[frozenset[int], list[int]] = {frozenset([identity]): []}
    frontier = list(found)
    while frontier:
        fresh = []
        for H in frontier:
            for C, gen in cyclic.items():
                if C <= H:
                    continue
                gens = found[H] + [gen]
                J = _close(table, identity, gens)
                if n % len(J) == 0 and J not in found:
                    found[J] = gens
                    fresh.append(J)
        frontier = fresh
    logging.debug(f"Retículo de subgrupos (orden | {n}): {len(found)} subgrupos")
    return found


def _as_groups(g: MatGroup, subsets) -> list[MatGroup]:
    ordered = sorted(subsets, key=lambda H: (len(H), sorted(H)))
    return [subgroup_from_indices(g, sorted(H)) for H in ordered]


def find_subgroups_of_order(g: MatGroup, n: int, budget: int) -> list[MatGroup]:
    """
    Todos los subgrupos de orden n (como conjuntos, no salvo conjugación).

    Raises:
        ValueError: Si n no divide |g|.
        CapExceededError: Si |g| supera `budget`.
    """
    if n < 1 or g.order % n:
        raise ValueError(f"n = {n} no divide |g| = {g.order}")
    lattice = _subgroup_lattice(g, n, budget)
    return _as_groups(g, [H for H in lattice if len(H) == n])


def all_subgroups(g: MatGroup, budget: int) -> list[MatGroup]:
    """Lista completa de subgrupos de g, ordenada por orden."""
    return _as_groups(g, _subgroup_lattice(g, g.order, budget))
