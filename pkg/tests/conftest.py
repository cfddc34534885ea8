import random
from functools import lru_cache

import pytest

import invforge as iv

# The verification targets: every q up to the full-pipeline sizes, plus
# the extension field q=25 for the unipotent relation.
PIPELINE_QS = [(3, 1), (5, 1), (7, 1), (3, 2)]
ALL_QS = PIPELINE_QS + [(5, 2)]


@lru_cache(maxsize=None)
def _field(p, n):
    return iv.make_field(p, n)


@lru_cache(maxsize=None)
def _invariants(p, n):
    return iv.build(_field(p, n))


@lru_cache(maxsize=None)
def _p_genset(p, n):
    return _invariants(p, n).p_genset()


@lru_cache(maxsize=None)
def _sl2_genset(p, n):
    return _invariants(p, n).sl2_genset()


@lru_cache(maxsize=None)
def _phi(p, n):
    return iv.compute_phi(_invariants(p, n))


# Default-argument wrappers so get_field(3) and get_field(3, 1) share one
# cached context (Poly equality is identity-sensitive on the ctx).
def get_field(p, n=1):
    return _field(p, n)


def get_invariants(p, n=1):
    return _invariants(p, n)


def get_p_genset(p, n=1):
    return _p_genset(p, n)


def get_sl2_genset(p, n=1):
    return _sl2_genset(p, n)


def get_phi(p, n=1):
    return _phi(p, n)


@lru_cache(maxsize=None)
def get_dimtable(p, n, tag, max_degree):
    return iv.compare(get_field(p, n), tag, max_degree)


def random_poly(ctx, rng: random.Random, max_degree=4, n_terms=5,
                nonzero=False):
    """Deterministic sparse polynomial from a seeded generator."""
    pairs = []
    for _ in range(n_terms):
        e0 = rng.randrange(max_degree + 1)
        e1 = rng.randrange(max_degree + 1 - e0)
        e2 = rng.randrange(max_degree + 1 - e0 - e1)
        pairs.append(((e0, e1, e2), rng.randrange(ctx.q)))
    f = iv.Poly.from_terms(ctx, pairs)
    if nonzero and f.is_zero():
        return iv.Poly.constant(ctx, 1) + f
    return f


@pytest.fixture(scope="session")
def f3():
    return get_field(3)


@pytest.fixture(scope="session")
def f5():
    return get_field(5)


@pytest.fixture(scope="session")
def f7():
    return get_field(7)


@pytest.fixture(scope="session")
def f9():
    return get_field(3, 2)


@pytest.fixture(scope="session")
def inv3():
    return get_invariants(3)


@pytest.fixture(scope="session")
def inv5():
    return get_invariants(5)
