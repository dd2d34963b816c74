import random
from fractions import Fraction

import pytest

from perdel.catalog import gram
from perdel.delaunay import delaunay_decomposition
from perdel.linalg import Matrix


@pytest.fixture(scope="session")
def d4_decomp():
    return delaunay_decomposition(gram("Dn", 4))


@pytest.fixture(scope="session")
def d5_decomp():
    return delaunay_decomposition(gram("Dn", 5))


@pytest.fixture(scope="session")
def square_decomp():
    return delaunay_decomposition(Matrix.identity(2))


@pytest.fixture(scope="session")
def hex_decomp():
    return delaunay_decomposition(gram("A2"))


def random_pd_form(rng, g, spread=2):
    """B^T B + I for a random integer matrix B: positive definite, exact."""
    while True:
        b = [[rng.randint(-spread, spread) for _ in range(g)] for _ in range(g)]
        q = [[sum(b[k][i] * b[k][j] for k in range(g)) + (i == j)
              for j in range(g)] for i in range(g)]
        return Matrix(q)


def random_unimodular(rng, g, steps=6):
    """Product of random elementary integer matrices (determinant +-1)."""
    m = [[int(i == j) for j in range(g)] for i in range(g)]
    for _ in range(steps):
        i, j = rng.randrange(g), rng.randrange(g)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        for k in range(g):
            m[i][k] += c * m[j][k]
    if rng.random() < 0.5:
        m[0] = [-x for x in m[0]]
    return Matrix(m)


def conjugate_form(q, u):
    """u^T q u for integer matrices."""
    return u.transpose().mul(q).mul(u)
