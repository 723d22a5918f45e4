from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.geometry.symplectic import (
    adjoint, are_isometries, enumerate_sp, extension_transvections, gram_from_field_reduction,
    is_isometry, is_totally_isotropic, sp_order, symplectic_transvections, transvection,
)
from src.groups.matgroup import CapExceededError, closure
from src.linalg.fq import coordinate_space
from src.linalg.subspace import rref_subspace, zero_subspace
from tests.conftest import MATRIX, form, minus_identity, pi, rho, scalars, sp, tower


def test_gram_3_1_1():
    assert form(3, 1, 1).gram.tolist() == [[0, 1], [2, 0]]


@pytest.mark.parametrize("p,a,m", MATRIX)
def test_trace_form_is_symplectic(p, a, m):
    f = form(p, a, m)
    assert f.n == 2 * m
    assert f.is_alternating()
    assert f.is_nondegenerate()


@pytest.mark.parametrize("p,a,m", MATRIX)
def test_field_reduction_matches_trace_form(p, a, m):
    assert gram_from_field_reduction(tower(p, a, m)) == form(p, a, m)


def test_evaluate_is_alternating_on_all_vectors():
    f = form(3, 1, 2)
    for v in product(range(3), repeat=4):
        assert f.evaluate(v, v) == 0


@pytest.mark.parametrize("p,a,m", [(3, 1, 1), (5, 1, 1), (3, 1, 2), (3, 2, 1)])
def test_isometries(p, a, m):
    f = form(p, a, m)
    s = scalars(p, a, m)
    assert is_isometry(s.identity(2 * m), f)
    assert is_isometry(minus_identity(p, a, m), f)
    assert is_isometry(pi(p, a, m), f)
    assert is_isometry(rho(p, a, m), f)


def test_scalar_two_is_not_an_isometry():
    s = scalars(5, 1, 1)
    assert not is_isometry(s.scalar_matrix(2, 2), form(5, 1, 1))


ADJOINT_TOWERS = [(3, 1, 1), (3, 1, 2), (3, 2, 1)]


@st.composite
def tower_and_matrix(draw):
    p, a, m = draw(st.sampled_from(ADJOINT_TOWERS))
    n, q = 2 * m, p ** a
    entries = draw(st.lists(st.integers(0, q - 1), min_size=n * n, max_size=n * n))
    return (p, a, m), np.array(entries, dtype=np.int64).reshape(n, n)


def test_adjoint_of_identity():
    f = form(3, 1, 1)
    assert np.array_equal(adjoint(f.scalars.identity(2), f), f.scalars.identity(2))


@settings(max_examples=60, deadline=None)
@given(tower_and_matrix())
def test_adjoint_identity_on_all_vector_pairs(case):
    params, M = case
    f = form(*params)
    s = f.scalars
    V = coordinate_space(tower(*params)).all_vectors()
    M_star = adjoint(M, f)
    left = s.matmul_chain(V, M_star.T, f.gram, V.T)
    right = s.matmul_chain(V, f.gram, M, V.T)
    assert np.array_equal(left, right)
    assert np.array_equal(adjoint(M_star, f), M)
    is_identity = np.array_equal(s.matmul(M_star, M), s.identity(f.n))
    assert is_isometry(M, f) == is_identity


@pytest.mark.parametrize("p,a,m", [(5, 1, 1), (3, 1, 2), (3, 2, 1)])
def test_adjoint_of_isometry_is_inverse(p, a, m):
    f = form(p, a, m)
    s = f.scalars
    for M in (pi(p, a, m), rho(p, a, m)):
        assert np.array_equal(adjoint(M, f), s.inverse(M))


def test_totally_isotropic():
    f = form(5, 1, 2)
    s = f.scalars
    assert is_totally_isotropic(zero_subspace(4), f)
    assert is_totally_isotropic(rref_subspace(s, [[1, 2, 0, 3]]), f)
    assert not is_totally_isotropic(rref_subspace(s, np.eye(4, dtype=np.int64)), f)


def test_transvections_are_isometries():
    f = form(3, 1, 2)
    gens = symplectic_transvections(f)
    assert len(gens) == 15 * 2
    assert are_isometries(np.stack(gens), f).all()
    T = transvection(f, [1, 0, 0, 0], 1)
    assert is_isometry(T, f)


@pytest.mark.parametrize("p,a,m", [(3, 1, 1), (5, 1, 1), (3, 2, 1), (5, 1, 2)])
def test_transvection_generator_set(p, a, m):
    f = form(p, a, m)
    q, n = p ** a, 2 * m
    gens = symplectic_transvections(f)
    assert len(gens) == (2 ** n - 1) * (q - 1)
    assert are_isometries(np.stack(gens), f).all()
    keys = set(f.scalars.keys(np.stack(gens)))
    assert len(keys) == len(gens)
    basis = np.eye(n, dtype=np.int64)
    for i in range(n):
        assert f.scalars.key(transvection(f, basis[i], 1)) in keys
        for j in range(i + 1, n):
            assert f.scalars.key(transvection(f, basis[i] + basis[j], 1)) in keys


@pytest.mark.parametrize("q,m,expected", [(3, 1, 24), (5, 1, 120), (7, 1, 336), (3, 2, 51840), (5, 2, 9_360_000)])
def test_sp_order(q, m, expected):
    assert sp_order(q, m) == expected


@pytest.mark.parametrize("p,a,m,order", [(3, 1, 1, 24), (5, 1, 1, 120), (7, 1, 1, 336), (3, 2, 1, 720)])
def test_enumerate_sp(p, a, m, order):
    group = sp(p, a, m)
    assert group.order == order
    assert are_isometries(group.elements, form(p, a, m)).all()


@pytest.mark.slow
def test_enumerate_sp_4_3():
    assert sp(3, 1, 2).order == 51840


def test_enumerate_sp_cap():
    with pytest.raises(CapExceededError) as info:
        enumerate_sp(tower(5, 1, 2), 200_000)
    assert info.value.size == 9_360_000


@pytest.mark.parametrize("p,a,m,order", [(3, 1, 1, 24), (5, 1, 1, 120), (3, 2, 1, 720)])
def test_extension_transvections_generate_sl2(p, a, m, order):
    f = form(p, a, m)
    gens = extension_transvections(tower(p, a, m))
    assert are_isometries(np.stack(gens), f).all()
    assert closure(f.scalars, gens, 100_000).order == order


@pytest.mark.slow
def test_extension_transvections_5_1_2():
    f = form(5, 1, 2)
    gens = extension_transvections(tower(5, 1, 2))
    group = closure(f.scalars, gens, 100_000)
    assert group.order == 25 * (625 - 1)
    assert are_isometries(group.elements, f).all()
