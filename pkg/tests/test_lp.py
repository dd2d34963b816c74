import random
from fractions import Fraction

from perdel.lp import strict_feasibility


def test_single_row():
    r = strict_feasibility([[1]])
    assert r.feasible and r.u[0] >= 1


def test_contradictory_pair():
    r = strict_feasibility([[1], [-1]])
    assert not r.feasible
    lam = r.farkas
    assert all(c >= 0 for c in lam) and sum(lam) == 1
    assert lam[0] * 1 + lam[1] * (-1) == 0


def test_zero_row_is_infeasible():
    r = strict_feasibility([[1, 0], [0, 0]])
    assert not r.feasible
    assert r.farkas[1] == 1


def test_duplicate_and_scaled_rows():
    r = strict_feasibility([[2, 0], [Fraction(1, 2), 0], [0, 3], [0, 1], [-1, -1]])
    assert not r.feasible
    lam = r.farkas
    rows = [[2, 0], [Fraction(1, 2), 0], [0, 3], [0, 1], [-1, -1]]
    for j in range(2):
        assert sum(lam[i] * rows[i][j] for i in range(5)) == 0
    assert sum(lam) == 1 and all(c >= 0 for c in lam)


def test_randomized_certificates():
    rng = random.Random(2024)
    for trial in range(40):
        k = rng.randint(1, 7)
        u0 = [Fraction(rng.randint(-9, 9)) for _ in range(k)]
        rows = []
        make_feasible = trial % 2 == 0
        for _ in range(rng.randint(4, 150)):
            v = [Fraction(rng.randint(-5, 5)) for _ in range(k)]
            if all(x == 0 for x in v):
                continue
            s = sum(a * b for a, b in zip(v, u0))
            if make_feasible:
                if s < 0:
                    v = [-x for x in v]
                elif s == 0:
                    continue
            rows.append(v)
        if not rows:
            continue
        if not make_feasible:
            neg = [-sum(v[i] for v in rows) for i in range(k)]
            if any(neg):
                rows.append(neg)
        result = strict_feasibility(rows)
        if result.feasible:
            assert all(sum(a * b for a, b in zip(v, result.u)) >= 1 for v in rows)
        else:
            lam = result.farkas
            assert all(c >= 0 for c in lam) and sum(lam) == 1
            for j in range(k):
                assert sum(lam[i] * rows[i][j] for i in range(len(rows))) == 0


def test_empty_system():
    assert strict_feasibility([]).feasible
