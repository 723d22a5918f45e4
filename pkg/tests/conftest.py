from functools import lru_cache

import pytest

from src.field.tower import make_tower
from src.geometry.spread import build_spread
from src.geometry.symplectic import enumerate_sp, gram_from_trace_form
from src.groups.model import build_metacyclic_group, build_pi, build_rho
from src.linalg.fq import coordinate_space
from src.utils.settings import DEFAULT_MATRIX, Caps

MATRIX = list(DEFAULT_MATRIX)
CAPS = Caps()


@lru_cache(maxsize=None)
def tower(p, a, m):
    return make_tower(p, a, m)


def scalars(p, a, m):
    return coordinate_space(tower(p, a, m)).scalars


@lru_cache(maxsize=None)
def form(p, a, m):
    return gram_from_trace_form(tower(p, a, m))


@lru_cache(maxsize=None)
def spread(p, a, m):
    return build_spread(tower(p, a, m))


@lru_cache(maxsize=None)
def pi(p, a, m):
    return build_pi(tower(p, a, m))


@lru_cache(maxsize=None)
def rho(p, a, m):
    return build_rho(tower(p, a, m))


@lru_cache(maxsize=None)
def metacyclic(p, a, m):
    return build_metacyclic_group(tower(p, a, m), CAPS.max_group_order)


@lru_cache(maxsize=None)
def sp(p, a, m):
    return enumerate_sp(tower(p, a, m), CAPS.max_group_order)


def minus_identity(p, a, m):
    s = scalars(p, a, m)
    return s.scalar_matrix(int(s.neg(1)), 2 * m)


@pytest.fixture
def caps():
    return CAPS
