from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from src.linalg.fq import ScalarField


@dataclass(frozen=True, eq=False)
class Subspace:
    """
    Subespacio de F_q^n representado por su base en forma escalonada reducida.

    Dos subespacios son iguales si y solo si sus bases canónicas coinciden bit a bit.
    """
    basis: np.ndarray = field(repr=False)
    n: int
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def key(self) -> bytes:
        return bytes([self.n, self.dim]) + np.ascontiguousarray(self.basis, dtype=np.int64).tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        rows = ", ".join(str(tuple(int(c) for c in row)) for row in self.basis)
        return f"Subspace(n={self.n}, dim={self.dim}, basis=[{rows}])"


def zero_subspace(n: int) -> Subspace:
    return Subspace(np.zeros((0, n), dtype=np.int64), n, ())


def rref_subspace(field_: ScalarField, vectors, n: int | None = None) -> Subspace:
    """
    Subespacio canónico generado por `vectors`.

    Args:
        field_ (ScalarField): Escalares.
        vectors: Secuencia (o matriz por filas) de vectores de longitud n.
        n (int, optional): Dimensión ambiente; obligatoria si `vectors` es vacío.

    Returns:
        Subspace: Base escalonada reducida, independiente del orden de entrada.
    """
    rows = np.asarray(vectors, dtype=np.int64)
    if rows.size == 0:
        if n is None:
            if rows.ndim == 2:
                n = rows.shape[1]
            else:
                raise ValueError("la dimensión ambiente es obligatoria para un conjunto vacío")
        return zero_subspace(n)
    if rows.ndim == 1:
        rows = rows[None, :]
    if n is not None and rows.shape[1] != n:
        raise ValueError(f"vectores de longitud {rows.shape[1]}, se esperaba {n}")
    R, pivots = field_.rref(rows)
    return Subspace(R, rows.shape[1], tuple(pivots))


def _check_ambient(A: Subspace, B: Subspace) -> None:
    if A.n != B.n:
        raise ValueError(f"dimensiones ambiente distintas: {A.n} y {B.n}")


def annihilator(field_: ScalarField, U: Subspace) -> np.ndarray:
    """Base de {x : u·x = 0 para todo u en U}."""
    return field_.nullspace(U.basis.reshape(U.dim, U.n))


def intersect(field_: ScalarField, A: Subspace, B: Subspace) -> Subspace:
    """Intersección exacta: el anulador de la suma de los anuladores."""
    _check_ambient(A, B)
    stacked = np.vstack([annihilator(field_, A), annihilator(field_, B)])
    return rref_subspace(field_, field_.nullspace(stacked), A.n)


def subspace_sum(field_: ScalarField, A: Subspace, B: Subspace) -> Subspace:
    _check_ambient(A, B)
    return rref_subspace(field_, np.vstack([A.basis, B.basis]), A.n)


def kernel(field_: ScalarField, M) -> Subspace:
    M = np.asarray(M, dtype=np.int64)
    return rref_subspace(field_, field_.nullspace(M), M.shape[1])


def eigenspace(field_: ScalarField, M, c: int) -> Subspace:
    """Núcleo de M - cI."""
    M = np.asarray(M, dtype=np.int64)
    shifted = field_.sub(M, field_.scalar_matrix(c, M.shape[0]))
    return kernel(field_, shifted)


def image(field_: ScalarField, U: Subspace, M) -> Subspace:
    """Imagen de U por la aplicación de matriz M (convención de columnas)."""
    if U.dim == 0:
        return U
    return rref_subspace(field_, field_.matmul(U.basis, np.asarray(M).T), U.n)


def contains_vectors(field_: ScalarField, U: Subspace, vectors: np.ndarray) -> np.ndarray:
    """
    Pertenencia por lotes: w está en U si coincide con Σ_j w[pivote_j]·base_j.

    Args:
        vectors (np.ndarray): Arreglo (..., n).

    Returns:
        np.ndarray: Máscara booleana de forma (...).
    """
    vectors = np.asarray(vectors, dtype=np.int64)
    if U.dim == 0:
        return ~np.any(vectors, axis=-1)
    coeffs = vectors[..., list(U.pivots)]
    rebuilt = field_.matmul(coeffs[..., None, :], U.basis)[..., 0, :]
    return np.all(rebuilt == vectors, axis=-1)


def subspace_vectors(field_: ScalarField, U: Subspace) -> np.ndarray:
    """Los q^dim vectores de U (solo para dimensiones pequeñas)."""
    if U.dim == 0:
        return np.zeros((1, U.n), dtype=np.int64)
    combos = np.array(list(product(range(field_.q), repeat=U.dim)), dtype=np.int64)
    return field_.matmul(combos, U.basis)
