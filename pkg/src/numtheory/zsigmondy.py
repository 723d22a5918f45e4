from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import factorint, isprime, multiplicity, n_order, primefactors


@dataclass(frozen=True)
class ZsigPrime:
    r: int
    order: int      # orden de q módulo r
    r_part: int     # r-parte de q^n - 1


@dataclass(frozen=True)
class ZsigResult:
    """Divisores primos de Zsigmondy de q^n - 1."""
    q: int
    n: int
    primes: tuple[ZsigPrime, ...]

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(z.r for z in self.primes)


def mult_order(q: int, r: int) -> int:
    """
    Menor k ≥ 1 con q^k ≡ 1 (mod r).

    Raises:
        ValueError: Si r divide a q.
    """
    if r < 2 or gcd(q, r) != 1:
        raise ValueError(f"q = {q} no es invertible módulo r = {r}")
    return int(n_order(q, r))


def _check_prime_power(q: int) -> None:
    factors = factorint(q) if q > 1 else {}
    if len(factors) != 1 or 2 in factors:
        raise ValueError(f"q = {q} no es potencia de un primo impar")


def zsigmondy_primes(q: int, n: int) -> ZsigResult:
    """
    Primos r | q^n - 1 que no dividen q^j - 1 para 1 ≤ j < n.

    Con n = 1 la condición es vacía y todo divisor primo de q - 1 cuenta.
    """
    _check_prime_power(q)
    if n < 1:
        raise ValueError(f"n = {n} debe ser positivo")
    value = q ** n - 1
    primes = []
    for r in primefactors(value):
        order = mult_order(q, r)
        if order == n:
            primes.append(ZsigPrime(int(r), order, int(r) ** int(multiplicity(r, value))))
    return ZsigResult(q, n, tuple(primes))


@dataclass(frozen=True)
class FermatReport:
    """Análisis de q^{2^b} + 1 frente a la configuración excepcional de Fermat."""
    q: int
    b: int
    value: int
    odd_primes: tuple[int, ...]
    all_zsigmondy: bool
    fermat_candidate: int
    fermat_is_prime: bool
    exceptional: bool
    extraspecial_bound: bool
    extraspecial_tight: bool

    def summary(self) -> list[str]:
        return [
            f"q^(2^{self.b}) + 1 = {self.value}, primos impares {list(self.odd_primes)}",
            f"todos de Zsigmondy para q^(2^{self.b + 1}) - 1: {self.all_zsigmondy}",
            f"configuración excepcional (= 2·{self.fermat_candidate}^t, Fermat): {self.exceptional}",
            f"cota extraespecial (q^(2^b)+1)/2 ≤ 2^(b+1)+1: {self.extraspecial_bound}"
            + (" (igualdad)" if self.extraspecial_tight else ""),
        ]


def fermat_exception_check(q: int, b: int) -> FermatReport:
    """
    Factoriza q^{2^b} + 1, comprueba que cada primo impar es de Zsigmondy para
    q^{2^{b+1}} - 1 y marca si el valor es 2·r^t con r = 2^{b+1} + 1 primo de Fermat.
    """
    if b < 0:
        raise ValueError(f"b = {b} debe ser no negativo")
    value = q ** (2 ** b) + 1
    odd = tuple(int(r) for r in primefactors(value) if r != 2)
    n = 2 ** (b + 1)
    zsig = set(zsigmondy_primes(q, n).values)
    fermat = 2 ** (b + 1) + 1
    fermat_prime = bool(isprime(fermat))
    exceptional = False
    if fermat_prime and odd == (fermat,):
        exceptional = value == 2 * fermat ** multiplicity(fermat, value)
    half = value // 2
    return FermatReport(
        q=q,
        b=b,
        value=value,
        odd_primes=odd,
        all_zsigmondy=all(r in zsig for r in odd),
        fermat_candidate=fermat,
        fermat_is_prime=fermat_prime,
        exceptional=exceptional,
        extraspecial_bound=half <= fermat,
        extraspecial_tight=half == fermat,
    )
