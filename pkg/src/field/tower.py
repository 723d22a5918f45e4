from __future__ import annotations

import logging
import operator
from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np
from sympy import Poly, isprime, primefactors, symbols

from src.utils.settings import load_caps

_X = symbols("x")


class ConstructionError(ValueError):
    """Parámetros inválidos para construir la torre F_p ⊂ F_q ⊂ F_{q^m} ⊂ F_{q^{2m}}."""


@dataclass(frozen=True)
class FFElem:
    """
    Elemento de F_{q^{2m}}, codificado por sus coeficientes en la base polinomial del módulo.

    `value` es la codificación entera Σ c_i p^i de los coeficientes (c_0 el de menor grado).
    Dos elementos son iguales solo si además pertenecen a la misma torre.
    """
    value: int
    tower: TowerCtx = field(repr=False)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.tower.digits[self.value])

    def is_zero(self) -> bool:
        return self.value == 0

    def _coerce(self, other: FFElem | int) -> int:
        if isinstance(other, FFElem):
            if other.tower is not self.tower and other.tower != self.tower:
                raise ValueError("no se pueden operar elementos de torres distintas")
            return other.value
        return self.tower.constant_value(other)

    def __add__(self, other: FFElem | int) -> FFElem:
        return self.tower.element(self.tower.add_values(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other: FFElem | int) -> FFElem:
        return self.tower.element(self.tower.sub_values(self.value, self._coerce(other)))

    def __rsub__(self, other: FFElem | int) -> FFElem:
        return self.tower.element(self.tower.sub_values(self._coerce(other), self.value))

    def __neg__(self) -> FFElem:
        return self.tower.element(self.tower.neg_values(self.value))

    def __mul__(self, other: FFElem | int) -> FFElem:
        return self.tower.element(self.tower.mul_values(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: FFElem | int) -> FFElem:
        divisor = self._coerce(other)
        if divisor == 0:
            raise ZeroDivisionError("división por cero en F_{q^{2m}}")
        return self.tower.element(self.tower.mul_values(self.value, self.tower.inv_values(divisor)))

    def __pow__(self, exponent: int) -> FFElem:
        return self.tower.element(self.tower.pow_value(self.value, exponent))

    def inverse(self) -> FFElem:
        if self.value == 0:
            raise ZeroDivisionError("el cero no tiene inverso")
        return self.tower.element(self.tower.inv_values(self.value))


@dataclass(frozen=True, eq=False)
class TowerCtx:
    """
    Mundo aritmético: p, q = p^a, m y el cuerpo F_{q^{2m}} con su elemento primitivo ω.

    Inmutable tras la construcción. La multiplicación usa las tablas de logaritmo
    discreto en base ω (`exp_table`, `log_table`); la suma opera sobre los dígitos.
    """
    p: int
    a: int
    m: int
    modulus: tuple[int, ...]
    omega_value: int
    digits: np.ndarray = field(repr=False)
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TowerCtx):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())

    def _identity(self) -> tuple:
        return (self.p, self.a, self.m, self.modulus, self.omega_value)

    @property
    def q(self) -> int:
        return self.p ** self.a

    @property
    def n(self) -> int:
        """Dimensión de V' = F_{q^{2m}} sobre F_q."""
        return 2 * self.m

    @property
    def degree(self) -> int:
        """Grado de F_{q^{2m}} sobre F_p."""
        return 2 * self.a * self.m

    @property
    def size(self) -> int:
        return self.p ** self.degree

    @property
    def powers(self) -> np.ndarray:
        return self.p ** np.arange(self.degree, dtype=np.int64)

    # --- elementos distinguidos ---

    def element(self, value: int) -> FFElem:
        return FFElem(int(value), self)

    def from_coeffs(self, coeffs) -> FFElem:
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) != self.degree:
            raise ValueError(f"se esperaban {self.degree} coeficientes, se recibieron {len(coeffs)}")
        return self.element(int(np.dot(coeffs, self.powers)))

    def constant_value(self, c: int) -> int:
        return int(c) % self.p

    def constant(self, c: int) -> FFElem:
        return self.element(self.constant_value(c))

    @property
    def zero(self) -> FFElem:
        return self.element(0)

    @property
    def one(self) -> FFElem:
        return self.element(1)

    def omega_power(self, k: int) -> FFElem:
        return self.element(self.exp_table[k % (self.size - 1)])

    @property
    def omega(self) -> FFElem:
        return self.element(self.omega_value)

    @property
    def epsilon(self) -> FFElem:
        return self.omega_power((self.q ** self.m + 1) // 2)

    @property
    def lam(self) -> FFElem:
        """λ = ω^{(q-1)/2}."""
        return self.omega_power((self.q - 1) // 2)

    @property
    def mu(self) -> FFElem:
        """μ = ω^{q^m-1}."""
        return self.omega_power(self.q ** self.m - 1)

    def dlog(self, x: FFElem) -> int:
        if x.value == 0:
            raise ValueError("el cero no tiene logaritmo discreto")
        return int(self.log_table[x.value])

    def multiplicative_order(self, x: FFElem) -> int:
        group_order = self.size - 1
        return group_order // gcd(self.dlog(x), group_order)

    def elements(self) -> list[FFElem]:
        return [self.element(v) for v in range(self.size)]

    # --- aritmética vectorizada sobre codificaciones ---

    def add_values(self, x, y):
        return ((self.digits[x] + self.digits[y]) % self.p) @ self.powers

    def sub_values(self, x, y):
        return ((self.digits[x] - self.digits[y]) % self.p) @ self.powers

    def neg_values(self, x):
        return ((-self.digits[x]) % self.p) @ self.powers

    def mul_values(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        logs = (self.log_table[x] + self.log_table[y]) % (self.size - 1)
        return np.where((x == 0) | (y == 0), 0, self.exp_table[logs])

    def inv_values(self, x):
        x = np.asarray(x, dtype=np.int64)
        return np.where(x == 0, 0, self.exp_table[(-self.log_table[x]) % (self.size - 1)])

    def pow_value(self, x: int, exponent: int) -> int:
        if x == 0:
            if exponent < 0:
                raise ZeroDivisionError("potencia negativa del cero")
            return 1 if exponent == 0 else 0
        return int(self.exp_table[(int(self.log_table[x]) * exponent) % (self.size - 1)])

    def frobenius_values(self, x, k: int):
        """x ↦ x^{q^k} sobre un arreglo de codificaciones."""
        x = np.asarray(x, dtype=np.int64)
        shift = pow(self.q, k % self.n, self.size - 1)
        return np.where(x == 0, 0, self.exp_table[(self.log_table[x] * shift) % (self.size - 1)])


def _mulmod(u: np.ndarray, v: np.ndarray, modulus: np.ndarray, p: int) -> np.ndarray:
    degree = len(modulus) - 1
    prod = np.convolve(u, v) % p
    for k in range(len(prod) - 1, degree - 1, -1):
        c = prod[k]
        if c:
            prod[k - degree:k] = (prod[k - degree:k] - c * modulus[:degree]) % p
            prod[k] = 0
    out = np.zeros(degree, dtype=np.int64)
    out[:min(degree, len(prod))] = prod[:degree]
    return out


def _powmod(u: np.ndarray, exponent: int, modulus: np.ndarray, p: int) -> np.ndarray:
    result = np.zeros(len(modulus) - 1, dtype=np.int64)
    result[0] = 1
    base = u.copy()
    while exponent:
        if exponent & 1:
            result = _mulmod(result, base, modulus, p)
        base = _mulmod(base, base, modulus, p)
        exponent >>= 1
    return result


def _smallest_irreducible(p: int, degree: int) -> tuple[int, ...]:
    # Orden lexicográfico con c_0 como coeficiente más significativo
    for coeffs in product(range(p), repeat=degree):
        if coeffs[0] == 0:
            continue
        candidate = list(coeffs) + [1]
        if Poly(list(reversed(candidate)), _X, modulus=p).is_irreducible:
            return tuple(candidate)
    raise RuntimeError(f"no se encontró polinomio irreducible de grado {degree} sobre F_{p}")


def _smallest_primitive(p: int, modulus: np.ndarray) -> np.ndarray:
    degree = len(modulus) - 1
    group_order = p ** degree - 1
    one = np.zeros(degree, dtype=np.int64)
    one[0] = 1
    cofactors = [group_order // r for r in primefactors(group_order)]
    for coeffs in product(range(p), repeat=degree):
        if not any(coeffs):
            continue
        g = np.array(coeffs, dtype=np.int64)
        if all(not np.array_equal(_powmod(g, e, modulus, p), one) for e in cofactors):
            return g
    raise RuntimeError("no se encontró elemento primitivo")


def _exp_table(p: int, modulus: np.ndarray, omega: np.ndarray, powers: np.ndarray) -> np.ndarray:
    degree = len(modulus) - 1
    group_order = p ** degree - 1
    # Matriz de multiplicación por ω sobre vectores fila de coeficientes
    mult = np.array([
        _mulmod(np.eye(degree, dtype=np.int64)[i], omega, modulus, p) for i in range(degree)
    ])
    block_size = min(group_order, 1024)
    block = np.zeros((block_size, degree), dtype=np.int64)
    block[0, 0] = 1
    for k in range(1, block_size):
        block[k] = (block[k - 1] @ mult) % p
    jump = np.eye(degree, dtype=np.int64)
    for _ in range(block_size):
        jump = (jump @ mult) % p
    blocks = [block]
    total = block_size
    while total < group_order:
        block = (block @ jump) % p
        blocks.append(block)
        total += block_size
    vectors = np.concatenate(blocks)[:group_order]
    return vectors @ powers


def _positive_int(name: str, value) -> int:
    try:
        number = operator.index(value)
    except TypeError:
        number = None
    if number is None or isinstance(value, bool) or number < 1:
        raise ConstructionError(f"{name} debe ser un entero positivo, se recibió {value!r}")
    return number


def make_tower(p: int, a: int, m: int, field_size_cap: int | None = None) -> TowerCtx:
    """
    Construye de forma determinista la torre de cuerpos para (p, a, m).

    Args:
        p (int): Primo impar.
        a (int): Exponente, q = p^a.
        m (int): Mitad de la dimensión de V' sobre F_q.
        field_size_cap (int, optional): Tope para q^{2m}; por defecto el de la configuración.

    Returns:
        TowerCtx: Módulo irreducible lexicográficamente mínimo y ω primitivo mínimo.
    """
    p, a, m = (_positive_int(name, value) for name, value in (("p", p), ("a", a), ("m", m)))
    if not isprime(p):
        raise ConstructionError(f"p = {p} no es primo")
    if p == 2:
        raise ConstructionError("p debe ser impar (característica 2 no soportada)")
    cap = field_size_cap if field_size_cap is not None else load_caps().field_size_cap
    degree = 2 * a * m
    size = p ** degree
    if size > cap:
        raise ConstructionError(f"|F_{{q^{{2m}}}}| = {p}^{degree} = {size} excede el tope {cap}")

    modulus = _smallest_irreducible(p, degree)
    modulus_arr = np.array(modulus, dtype=np.int64)
    omega = _smallest_primitive(p, modulus_arr)
    powers = p ** np.arange(degree, dtype=np.int64)
    logging.debug(f"Torre ({p},{a},{m}): módulo {modulus}, ω = {tuple(int(c) for c in omega)}")

    exp_table = _exp_table(p, modulus_arr, omega, powers)
    log_table = np.full(size, -1, dtype=np.int64)
    log_table[exp_table] = np.arange(size - 1, dtype=np.int64)
    digits = (np.arange(size, dtype=np.int64)[:, None] // powers[None, :]) % p

    tower = TowerCtx(
        p=p, a=a, m=m,
        modulus=modulus,
        omega_value=int(omega @ powers),
        digits=digits,
        exp_table=exp_table,
        log_table=log_table,
    )
    _check_invariants(tower)
    return tower


def _check_invariants(tower: TowerCtx) -> None:
    q, m = tower.q, tower.m
    if np.any(tower.log_table[1:] < 0):
        raise RuntimeError("ω no genera el grupo multiplicativo")
    eps = tower.epsilon
    if frobenius(tower, eps, m) != -eps:
        raise RuntimeError("ε^{q^m} ≠ -ε")
    if tower.multiplicative_order(tower.mu) != q ** m + 1:
        raise RuntimeError("μ no tiene orden q^m + 1")


def frobenius(ctx: TowerCtx, x: FFElem, k: int) -> FFElem:
    """x ↦ x^{q^k}, con k reducido módulo 2m."""
    return ctx.element(ctx.frobenius_values(x.value, k))


def relative_trace(ctx: TowerCtx, x: FFElem, d: int) -> FFElem:
    """Traza de F_{q^{2m}} a F_{q^d}: Σ_{j<2m/d} x^{q^{dj}}."""
    if d < 1 or ctx.n % d:
        raise ValueError(f"d = {d} no divide 2m = {ctx.n}")
    total = ctx.zero
    for j in range(ctx.n // d):
        total = total + frobenius(ctx, x, d * j)
    return total


def trace_to_base(ctx: TowerCtx, x: FFElem) -> FFElem:
    """Traza de F_{q^{2m}} a F_q."""
    return relative_trace(ctx, x, 1)


def subfield_elements(ctx: TowerCtx, d: int) -> list[FFElem]:
    """
    Elementos de F_{q^d} dentro de F_{q^{2m}}: el cero y las potencias ω^{k(q^{2m}-1)/(q^d-1)}.

    Args:
        ctx (TowerCtx): Torre.
        d (int): Divisor de 2m.

    Returns:
        list[FFElem]: Los q^d elementos fijos por x ↦ x^{q^d}.
    """
    if d < 1 or ctx.n % d:
        raise ValueError(f"d = {d} no divide 2m = {ctx.n}")
    sub_order = ctx.q ** d - 1
    step = (ctx.size - 1) // sub_order
    return [ctx.zero] + [ctx.omega_power(k * step) for k in range(sub_order)]
