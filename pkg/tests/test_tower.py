from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.field.tower import (
    ConstructionError, frobenius, make_tower, relative_trace, subfield_elements, trace_to_base,
)
from tests.conftest import MATRIX, tower

SMALL = [(3, 1, 1), (5, 1, 1), (3, 1, 2), (3, 2, 1), (7, 1, 1)]


def _has_factor(coeffs, p):
    """Divisibilidad por algún mónico de grado 1 o 2 (basta para cuárticas)."""
    def remainder(num, den):
        num = list(num)
        while len(num) >= len(den):
            c = num[-1]
            shift = len(num) - len(den)
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - c * d) % p
            num.pop()
        return num

    for deg in (1, 2):
        for low in product(range(p), repeat=deg):
            if not any(remainder(coeffs, list(low) + [1])):
                return True
    return False


def test_tower_3_1_1():
    ctx = tower(3, 1, 1)
    assert ctx.size == 9
    assert ctx.modulus == (1, 0, 1)
    assert ctx.omega.coeffs == (1, 1)
    assert ctx.multiplicative_order(ctx.omega) == 8


def test_tower_5_1_1_mu_order():
    ctx = tower(5, 1, 1)
    assert ctx.modulus == (1, 1, 1)
    assert ctx.omega.coeffs == (1, 3)
    assert ctx.mu == ctx.omega ** 4
    assert ctx.multiplicative_order(ctx.mu) == 6


def test_tower_3_1_2_modulus_is_smallest_irreducible_quartic():
    ctx = tower(3, 1, 2)
    expected = None
    for low in product(range(3), repeat=4):
        coeffs = list(low) + [1]
        if low[0] != 0 and not _has_factor(coeffs, 3):
            expected = tuple(coeffs)
            break
    assert ctx.modulus == expected
    assert ctx.multiplicative_order(ctx.omega) == 80


@pytest.mark.parametrize("p,a,m", [(4, 1, 1), (2, 1, 1), (9, 1, 1), (3, 0, 1), (3, 1, 0)])
def test_invalid_parameters(p, a, m):
    with pytest.raises(ConstructionError):
        make_tower(p, a, m)


@pytest.mark.parametrize("p,a,m", [(3.0, 1, 1), (True, 1, 1), ("3", 1, 1), (3, 1, 1.5)])
def test_non_integer_parameters(p, a, m):
    with pytest.raises(ConstructionError, match="entero positivo"):
        make_tower(p, a, m)


def test_numpy_integer_parameters():
    row = np.array([5, 1, 1], dtype=np.int64)
    ctx = make_tower(*row)
    assert ctx == tower(5, 1, 1)
    assert type(ctx.p) is int


def test_field_size_cap():
    with pytest.raises(ConstructionError, match="excede"):
        make_tower(3, 1, 2, field_size_cap=80)


@pytest.mark.parametrize("p,a,m", MATRIX)
def test_constants(p, a, m):
    ctx = tower(p, a, m)
    q = ctx.q
    eps = ctx.epsilon
    assert frobenius(ctx, eps, m) == -eps
    assert ctx.multiplicative_order(ctx.mu) == q ** m + 1
    group_order = ctx.size - 1
    assert ctx.multiplicative_order(ctx.lam) == group_order // np.gcd(group_order, (q - 1) // 2)


def test_determinism():
    first, second = make_tower(5, 1, 2), make_tower(5, 1, 2)
    assert first == second
    assert np.array_equal(first.exp_table, second.exp_table)
    assert np.array_equal(first.log_table, second.log_table)


def test_frobenius_examples():
    ctx = tower(5, 1, 1)
    assert frobenius(ctx, ctx.omega, 1) == ctx.omega ** 5
    for c in range(5):
        assert frobenius(ctx, ctx.constant(c), 1) == ctx.constant(c)
    x = ctx.omega_power(7)
    assert frobenius(ctx, x, 2) == x


@pytest.mark.parametrize("p,a,m", SMALL)
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_frobenius_inverse(p, a, m, data):
    ctx = tower(p, a, m)
    x = ctx.element(data.draw(st.integers(0, ctx.size - 1)))
    assert frobenius(ctx, frobenius(ctx, x, 1), 2 * m - 1) == x
    assert frobenius(ctx, x, 1) == x ** ctx.q


@pytest.mark.parametrize("p,a,m", SMALL)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_field_axioms(p, a, m, data):
    ctx = tower(p, a, m)
    x, y, z = (ctx.element(data.draw(st.integers(0, ctx.size - 1))) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == ctx.zero
    if not x.is_zero():
        assert x * x.inverse() == ctx.one


def test_trace_small_values():
    for p, a, m in SMALL:
        ctx = tower(p, a, m)
        assert trace_to_base(ctx, ctx.one) == ctx.constant(2 * m)
        assert trace_to_base(ctx, ctx.zero) == ctx.zero


def test_trace_fibers_3_1_1():
    ctx = tower(3, 1, 1)
    counts = {}
    for x in ctx.elements():
        t = trace_to_base(ctx, x)
        assert t == x + x ** 3
        counts[t.value] = counts.get(t.value, 0) + 1
    assert counts == {0: 3, 1: 3, 2: 3}


@pytest.mark.parametrize("p,a,m", [(3, 1, 1), (5, 1, 1), (3, 1, 2), (3, 2, 1), (5, 1, 2)])
def test_trace_lands_in_base_and_matches_naive_sum(p, a, m):
    ctx = tower(p, a, m)
    for x in ctx.elements():
        t = trace_to_base(ctx, x)
        assert frobenius(ctx, t, 1) == t
        naive = ctx.zero
        for i in range(2 * m):
            naive = naive + x ** (ctx.q ** i)
        assert t == naive


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 2))
def test_trace_is_linear(u, v, c):
    ctx = tower(3, 1, 2)
    x, y, k = ctx.element(u), ctx.element(v), ctx.constant(c)
    assert trace_to_base(ctx, k * x + y) == k * trace_to_base(ctx, x) + trace_to_base(ctx, y)


def test_relative_trace():
    ctx = tower(3, 1, 2)
    x = ctx.omega_power(11)
    assert relative_trace(ctx, x, 4) == x
    assert relative_trace(ctx, x, 1) == trace_to_base(ctx, x)
    t = relative_trace(ctx, x, 2)
    assert frobenius(ctx, t, 2) == t
    with pytest.raises(ValueError):
        relative_trace(ctx, x, 3)


def test_subfield_elements():
    ctx = tower(3, 1, 1)
    assert {x.value for x in subfield_elements(ctx, 2)} == set(range(9))
    assert {x.value for x in subfield_elements(ctx, 1)} == {0, 1, 2}
    big = tower(5, 1, 2)
    sub = subfield_elements(big, 2)
    assert len(sub) == 25
    assert all(x ** 25 == x for x in sub)
    with pytest.raises(ValueError):
        subfield_elements(big, 3)


def test_elements_of_different_towers():
    x, y = tower(3, 1, 1).element(4), tower(5, 1, 1).element(4)
    assert x != y
    assert len({x, y}) == 2
    assert make_tower(3, 1, 1).element(4) == x
    with pytest.raises(ValueError, match="torres distintas"):
        x + y
    with pytest.raises(ValueError, match="torres distintas"):
        x * y
