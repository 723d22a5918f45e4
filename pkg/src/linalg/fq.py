from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from src.field.tower import FFElem, TowerCtx


@dataclass(frozen=True, eq=False)
class ScalarField:
    """
    Aritmética de F_q sobre códigos enteros.

    Un escalar se codifica por sus coordenadas (d_0, ..., d_{a-1}) sobre F_p en la base
    1, ζ, ..., ζ^{a-1} con ζ = ω^{(q^{2m}-1)/(q-1)}; el código es Σ d_k p^k. Con a = 1 el
    código coincide con el residuo módulo p.
    """
    p: int
    a: int
    values: np.ndarray = field(repr=False)        # código -> valor en la torre
    code_of_value: np.ndarray = field(repr=False)  # valor en la torre -> código (o -1)
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.a

    @property
    def prime(self) -> bool:
        return self.a == 1

    @property
    def key_dtype(self):
        return np.uint8 if self.q <= 256 else np.uint16

    # --- operaciones elemento a elemento ---

    def add(self, x, y):
        if self.prime:
            return (np.asarray(x) + np.asarray(y)) % self.p
        return self.add_table[x, y]

    def neg(self, x):
        if self.prime:
            return (-np.asarray(x)) % self.p
        return self.neg_table[x]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.prime:
            return (np.asarray(x) * np.asarray(y)) % self.p
        return self.mul_table[x, y]

    def inv(self, x):
        if np.any(np.asarray(x) == 0):
            raise ZeroDivisionError("el cero no es invertible en F_q")
        return self.inv_table[x]

    def nonzero(self) -> range:
        return range(1, self.q)

    # --- matrices ---

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def scalar_matrix(self, c: int, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64) * int(c)

    def matmul(self, A, B) -> np.ndarray:
        """Producto (por lotes) de matrices sobre F_q."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.prime:
            return (A @ B) % self.p
        prods = self.mul_table[A[..., :, :, None], B[..., None, :, :]]
        acc = prods[..., :, 0, :]
        for k in range(1, prods.shape[-2]):
            acc = self.add_table[acc, prods[..., :, k, :]]
        return acc

    def matmul_chain(self, *mats) -> np.ndarray:
        result = mats[0]
        for M in mats[1:]:
            result = self.matmul(result, M)
        return result

    def mat_pow(self, M, exponent: int) -> np.ndarray:
        M = np.asarray(M, dtype=np.int64)
        if exponent < 0:
            M, exponent = self.inverse(M), -exponent
        result = self.identity(M.shape[-1])
        while exponent:
            if exponent & 1:
                result = self.matmul(result, M)
            M = self.matmul(M, M)
            exponent >>= 1
        return result

    def batch_pow(self, mats: np.ndarray, exponents: np.ndarray) -> np.ndarray:
        """Eleva cada matriz del lote a su propio exponente no negativo."""
        mats = np.asarray(mats, dtype=np.int64)
        exponents = np.asarray(exponents, dtype=np.int64).copy()
        n = mats.shape[-1]
        result = np.broadcast_to(self.identity(n), mats.shape).copy()
        base = mats.copy()
        while np.any(exponents > 0):
            odd = (exponents & 1).astype(bool)
            if np.any(odd):
                result[odd] = self.matmul(result[odd], base[odd])
            exponents >>= 1
            active = exponents > 0
            if np.any(active):
                base[active] = self.matmul(base[active], base[active])
        return result

    def keys(self, batch: np.ndarray) -> list[bytes]:
        """Codificación canónica en bytes de cada matriz de un lote (N, n, n)."""
        flat = np.ascontiguousarray(np.asarray(batch).reshape(len(batch), -1).astype(self.key_dtype))
        return [row.tobytes() for row in flat]

    def key(self, M: np.ndarray) -> bytes:
        return np.ascontiguousarray(np.asarray(M).astype(self.key_dtype)).tobytes()

    # --- eliminación gaussiana ---

    def rref(self, M) -> tuple[np.ndarray, list[int]]:
        """
        Forma escalonada reducida por filas de M.

        Returns:
            tuple[np.ndarray, list[int]]: Filas no nulas de la forma reducida y columnas pivote.
        """
        R = np.array(M, dtype=np.int64, copy=True)
        if R.ndim != 2:
            raise ValueError(f"se esperaba una matriz, se recibió forma {R.shape}")
        rows, cols = R.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            candidates = np.nonzero(R[r:, c])[0]
            if len(candidates) == 0:
                continue
            pivot_row = r + int(candidates[0])
            if pivot_row != r:
                R[[r, pivot_row]] = R[[pivot_row, r]]
            R[r] = self.mul(int(self.inv(int(R[r, c]))), R[r])
            for i in np.nonzero(R[:, c])[0]:
                if i != r:
                    R[i] = self.sub(R[i], self.mul(int(R[i, c]), R[r]))
            pivots.append(c)
            r += 1
        return R[:r], pivots

    def rank(self, M) -> int:
        M = np.asarray(M)
        if M.size == 0:
            return 0
        return len(self.rref(M)[1])

    def nullspace(self, M) -> np.ndarray:
        """Base (por filas) de {x : M x = 0}."""
        M = np.asarray(M, dtype=np.int64)
        cols = M.shape[1]
        if M.shape[0] == 0:
            return self.identity(cols)
        R, pivots = self.rref(M)
        free = [c for c in range(cols) if c not in pivots]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for k, f in enumerate(free):
            basis[k, f] = 1
            for i, c in enumerate(pivots):
                basis[k, c] = self.neg(int(R[i, f]))
        return basis

    def inverse(self, M) -> np.ndarray:
        M = np.asarray(M, dtype=np.int64)
        n = M.shape[0]
        if M.shape != (n, n):
            raise ValueError(f"matriz no cuadrada: {M.shape}")
        R, pivots = self.rref(np.hstack([M, self.identity(n)]))
        if pivots[:n] != list(range(n)):
            raise ValueError("matriz singular")
        return R[:n, n:]

    def is_invertible(self, M) -> bool:
        M = np.asarray(M)
        return M.shape[0] == M.shape[1] and self.rank(M) == M.shape[0]


def _scalar_field(tower: TowerCtx) -> ScalarField:
    p, a, q = tower.p, tower.a, tower.q
    zeta = tower.omega_power((tower.size - 1) // (q - 1)).value
    zeta_powers = [tower.pow_value(zeta, k) for k in range(a)]
    values = np.zeros(q, dtype=np.int64)
    for code, digits in enumerate(product(range(p), repeat=a)):
        # d_0 es el dígito menos significativo del código
        d = digits[::-1]
        total = 0
        for k, dk in enumerate(d):
            total = int(tower.add_values(total, tower.mul_values(dk, zeta_powers[k])))
        values[code] = total
    code_of_value = np.full(tower.size, -1, dtype=np.int64)
    code_of_value[values] = np.arange(q, dtype=np.int64)
    if np.unique(values).size != q:
        raise RuntimeError("la base de F_q sobre F_p no es independiente")
    add_table = code_of_value[tower.add_values(values[:, None], values[None, :])]
    mul_table = code_of_value[tower.mul_values(values[:, None], values[None, :])]
    neg_table = code_of_value[tower.neg_values(values)]
    inv_table = code_of_value[tower.inv_values(values)]
    inv_table[0] = 0
    return ScalarField(p, a, values, code_of_value, add_table, mul_table, neg_table, inv_table)


@dataclass(frozen=True, eq=False)
class CoordinateSpace:
    """
    V' = F_{q^{2m}} visto como F_q^{2m} en la base ω^0, ..., ω^{2m-1}.

    Los vectores se indexan por Σ s_i q^{n-1-i} (s_0 más significativo).
    """
    tower: TowerCtx
    scalars: ScalarField
    coords_table: np.ndarray = field(repr=False)   # valor -> coordenadas (Q, n)
    vector_values: np.ndarray = field(repr=False)  # índice de vector -> valor

    @property
    def n(self) -> int:
        return self.tower.n

    @property
    def index_weights(self) -> np.ndarray:
        return self.scalars.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64)

    def coords(self, x: FFElem) -> np.ndarray:
        return self.coords_table[x.value].copy()

    def element(self, coords) -> FFElem:
        return self.tower.element(int(self.vector_values[self.vector_index(coords)]))

    def vector_index(self, coords) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) @ self.index_weights

    def all_vectors(self) -> np.ndarray:
        """Todos los vectores de F_q^{2m}, en orden de índice."""
        return self.coords_table[self.vector_values]

    def scalar_code(self, x: FFElem) -> int:
        code = int(self.scalars.code_of_value[x.value])
        if code < 0:
            raise ValueError(f"{x.coeffs} no pertenece a F_q")
        return code

    def map_matrix(self, fn) -> np.ndarray:
        """
        Matriz (convención de columnas) de una aplicación F_q-lineal de V'.

        Args:
            fn: Función vectorizada sobre codificaciones de la torre.

        Returns:
            np.ndarray: Columna j = coordenadas de fn(ω^j).
        """
        basis = self.tower.exp_table[:self.n]
        images = np.asarray(fn(basis), dtype=np.int64)
        return self.coords_table[images].T.copy()


@lru_cache(maxsize=32)
def coordinate_space(tower: TowerCtx) -> CoordinateSpace:
    """Espacio de coordenadas de la torre (memoizado por torre)."""
    scalars = _scalar_field(tower)
    q, n = tower.q, tower.n
    basis_values = tower.exp_table[:n]
    vals = tower.mul_values(scalars.values, basis_values[0])
    for i in range(1, n):
        contribution = tower.mul_values(scalars.values, basis_values[i])
        vals = tower.add_values(vals[:, None], contribution[None, :]).reshape(-1)
    vector_values = np.asarray(vals, dtype=np.int64)
    if np.unique(vector_values).size != tower.size:
        raise RuntimeError("las potencias ω^i no forman una base de V' sobre F_q")
    index = np.arange(tower.size, dtype=np.int64)
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    coords_table = np.empty((tower.size, n), dtype=np.int64)
    coords_table[vector_values] = (index[:, None] // weights[None, :]) % q
    return CoordinateSpace(tower, scalars, coords_table, vector_values)


def scalar_field(tower: TowerCtx) -> ScalarField:
    return coordinate_space(tower).scalars


def i4_scalar(ctx: TowerCtx) -> int:
    """
    Raíz cuadrada canónica de -1 en F_q (la de menor código).

    Raises:
        ValueError: Si q ≢ 1 (mod 4).
    """
    if ctx.q % 4 != 1:
        raise ValueError(f"no hay raíz cuadrada de -1 en F_q (q = {ctx.q})")
    field_ = scalar_field(ctx)
    codes = np.arange(ctx.q, dtype=np.int64)
    minus_one = int(field_.neg(1))
    roots = codes[field_.mul(codes, codes) == minus_one]
    return int(roots.min())
