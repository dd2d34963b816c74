import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from perdel.errors import NonSymmetric
from perdel.linalg import (Matrix, invert, kernel_basis, ldlt_signature,
                           rank, solve)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)


def test_rank_identity():
    assert rank(Matrix.identity(2)) == 2


def test_rank_repeated_row():
    assert rank(Matrix([[1, 1], [1, 1]])) == 1


def test_rank_d4_gram():
    from perdel.catalog import gram
    q = gram("Dn", 4)
    assert rank(q) == 4
    # independent oracle: fraction-free elimination via explicit 4x4 minors
    rows = [[int(x) for x in r] for r in q.entries]
    det = 0
    for perm in itertools.permutations(range(4)):
        sign = 1
        p = list(perm)
        for i in range(4):
            for j in range(i + 1, 4):
                if p[i] > p[j]:
                    sign = -sign
        term = sign
        for i in range(4):
            term *= rows[i][perm[i]]
        det += term
    assert det != 0


def test_kernel_identity_empty():
    assert kernel_basis(Matrix.identity(3)).cols == 0


def test_kernel_one_row():
    k = kernel_basis(Matrix([[1, 1]]))
    assert k.cols == 1
    v = [k.entries[0][0], k.entries[1][0]]
    assert v[0] == -v[1] != 0


def test_rank_nullity():
    rng = random.Random(42)
    for _ in range(40):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = Matrix([[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                     for _ in range(cols)] for _ in range(rows)])
        assert rank(m) + kernel_basis(m).cols == cols
        k = kernel_basis(m)
        for j in range(k.cols):
            col = [k.entries[i][j] for i in range(cols)]
            assert all(
                sum((m.entries[r][c] * col[c] for c in range(cols)), Fraction(0)) == 0
                for r in range(rows)
            )


def test_solve_roundtrip():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 5)
        m = Matrix([[Fraction(rng.randint(-5, 5)) for _ in range(n)]
                    for _ in range(n)])
        x = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]
        rhs = m.mul_vec(x)
        sol = solve(m, rhs)
        assert sol is not None
        assert m.mul_vec(sol) == rhs


def test_solve_inconsistent():
    assert solve(Matrix([[1, 1], [1, 1]]), [Fraction(0), Fraction(1)]) is None


def test_invert():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 5)
        while True:
            m = Matrix([[Fraction(rng.randint(-4, 4)) for _ in range(n)]
                        for _ in range(n)])
            if rank(m) == n:
                break
        assert m.mul(invert(m)) == Matrix.identity(n)


def test_ldlt_examples():
    assert ldlt_signature(Matrix.identity(3)).kind == "positive_definite"
    sig = ldlt_signature(Matrix([[1, 0], [0, 0]]))
    assert sig.kind == "positive_semidefinite_with_kernel"
    assert [sig.kernel.entries[i][0] for i in range(2)] == [0, 1]
    assert ldlt_signature(Matrix([[2, 1], [1, 2]])).kind == "positive_definite"
    assert ldlt_signature(Matrix([[0, 1], [1, 0]])).kind == "indefinite"
    assert ldlt_signature(Matrix([[-1, 0], [0, 2]])).kind == "indefinite"


def test_ldlt_rejects_nonsymmetric():
    with pytest.raises(NonSymmetric):
        ldlt_signature(Matrix([[1, 2], [0, 1]]))


def test_ldlt_matches_minor_oracle():
    # positive definite iff all leading principal minors positive
    rng = random.Random(11)
    for _ in range(60):
        n = 4
        m = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)]
             for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                m[j][i] = m[i][j]
        mat = Matrix(m)
        minors_positive = True
        for k in range(1, n + 1):
            sub = Matrix([row[:k] for row in m[:k]])
            det = _det(sub)
            if det <= 0:
                minors_positive = False
                break
        assert ldlt_signature(mat).is_positive_definite == minors_positive


def _det(m):
    n = m.rows
    if n == 1:
        return m.entries[0][0]
    total = Fraction(0)
    for j in range(n):
        sub = Matrix([row[:j] + row[j + 1:] for row in m.entries[1:]])
        term = m.entries[0][j] * _det(sub)
        total += term if j % 2 == 0 else -term
    return total


@given(st.lists(rationals, min_size=2, max_size=2))
def test_arithmetic_roundtrip(pair):
    a, b = pair
    assert (a + b) - b == a
