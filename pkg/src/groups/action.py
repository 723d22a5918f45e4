from __future__ import annotations

from collections import deque

import numpy as np

from src.geometry.spread import Spread, map_spread, spread_permutations
from src.groups.matgroup import MatGroup, subgroup_from_indices
from src.linalg.fq import ScalarField
from src.linalg.subspace import Subspace, contains_vectors, image


def _generators(g) -> np.ndarray:
    if isinstance(g, MatGroup):
        return g.generators
    gens = np.asarray(g, dtype=np.int64)
    return gens[None] if gens.ndim == 2 else gens


def orbit_of_subspace(scalars: ScalarField, g, U: Subspace) -> list[Subspace]:
    """
    Órbita de U bajo el grupo (o la lista de generadores) g, sin repeticiones.

    Args:
        scalars (ScalarField): Escalares.
        g: MatGroup o secuencia de matrices generadoras.
        U (Subspace): Subespacio inicial.

    Returns:
        list[Subspace]: Órbita en orden de descubrimiento, empezando por U.
    """
    gens = _generators(g)
    orbit = [U]
    seen = {U.key}
    queue = deque([U])
    while queue:
        W = queue.popleft()
        for x in gens:
            Y = image(scalars, W, x)
            if Y.key not in seen:
                seen.add(Y.key)
                orbit.append(Y)
                queue.append(Y)
    return orbit


def stabilizer(g: MatGroup, U: Subspace) -> MatGroup:
    """{x ∈ g : xU = U}, probando la pertenencia de las imágenes de la base de U."""
    if U.dim == 0:
        return g
    images = g.scalars.matmul(g.elements, U.basis.T)
    inside = contains_vectors(g.scalars, U, np.swapaxes(images, 1, 2))
    return subgroup_from_indices(g, np.nonzero(np.all(inside, axis=1))[0])


def generator_permutations(g, s: Spread) -> list[tuple[int, ...]]:
    """
    Permutaciones de los miembros inducidas por los generadores.

    Raises:
        ValueError: Si algún generador no estabiliza el spread.
    """
    perms = []
    for k, x in enumerate(_generators(g)):
        action = map_spread(x, s)
        if not action.stabilized:
            raise ValueError(f"el generador {k} no estabiliza el spread (miembro {action.witness})")
        perms.append(action.permutation)
    return perms


def spread_orbits(g, s: Spread) -> list[tuple[int, ...]]:
    """Órbitas del grupo generado sobre los índices de miembros, ordenadas por su mínimo."""
    perms = generator_permutations(g, s)
    unseen = set(range(len(s)))
    orbits = []
    while unseen:
        start = min(unseen)
        orbit = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for perm in perms:
                j = perm[i]
                if j not in orbit:
                    orbit.add(j)
                    queue.append(j)
        unseen -= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits


def is_transitive_on_spread(g, s: Spread) -> bool:
    """La órbita del miembro 0 tiene tamaño q^m + 1."""
    return len(spread_orbits(g, s)[0]) == len(s)


def setwise_stabilizer(g: MatGroup, s: Spread) -> MatGroup:
    """Elementos de g que permutan los miembros del spread."""
    _, stabilizes = spread_permutations(s, g.elements)
    return subgroup_from_indices(g, np.nonzero(stabilizes)[0])
