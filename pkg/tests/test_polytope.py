import itertools
import random
from fractions import Fraction

import pytest

from perdel.errors import DegenerateCell
from perdel.polytope import Cell, convex_hull, _det_int
from tests.conftest import random_unimodular


def test_unit_square():
    c = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert len(c.vertices) == 4
    assert len(c.inequalities) == 4
    assert c.affine_dim == 2


def test_collinear_middle_dropped():
    c = convex_hull([(0, 0), (1, 0), (2, 0)])
    assert c.vertices == ((0, 0), (2, 0))
    assert c.affine_dim == 1
    assert c.lattice_points() == ((0, 0), (1, 0), (2, 0))


def test_beta3_brute_force_facets():
    pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    c = convex_hull(pts)
    assert len(c.vertices) == 6
    assert len(c.inequalities) == 8
    # oracle: every sign pattern (+-1,+-1,+-1) must support a facet
    normals = {cv for _c0, cv in c.inequalities}
    expected = set(itertools.product((-1, 1), repeat=3))
    assert {tuple(-v for v in n) for n in normals} | normals >= expected or \
        normals == expected


def test_lattice_points_counts():
    sq = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert len(sq.lattice_points()) == 4
    big = convex_hull([(0, 0), (2, 0), (0, 2), (2, 2)])
    assert len(big.lattice_points()) == 9


def test_lattice_points_membership_oracle():
    # independent oracle: Caratheodory check over all vertex sub-simplices
    rng = random.Random(19)
    for _ in range(10):
        pts = [(rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-2, 2))
               for _ in range(6)]
        cell = convex_hull(pts)
        if cell.affine_dim != 3:
            continue
        lo = [min(v[d] for v in cell.vertices) for d in range(3)]
        hi = [max(v[d] for v in cell.vertices) for d in range(3)]
        expected = set()
        for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if _in_hull_caratheodory(cell.vertices, p):
                expected.add(p)
        assert set(cell.lattice_points()) == expected


def _in_hull_caratheodory(verts, p):
    from perdel.linalg import Matrix, solve
    d = len(p)
    for sub in itertools.combinations(verts, d + 1):
        rows = [[Fraction(v[k]) for v in sub] for k in range(d)]
        rows.append([Fraction(1)] * (d + 1))
        lam = solve(Matrix(rows), [Fraction(x) for x in p] + [Fraction(1)])
        if lam is not None and all(l >= 0 for l in lam):
            return True
    return False


def test_normalized_volume_examples():
    assert convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)]).normalized_volume() == 2
    cube = convex_hull(list(itertools.product((0, 1), repeat=3)))
    assert cube.normalized_volume() == 6
    beta3 = convex_hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0),
                         (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    assert beta3.normalized_volume() == 8
    # cross-check by summing 8 simplex determinants around the origin
    total = 0
    for signs in itertools.product((-1, 1), repeat=3):
        mat = [[signs[0], 0, 0], [0, signs[1], 0], [0, 0, signs[2]]]
        total += abs(_det_int(mat))
    assert total == 8


def test_normalized_volume_degenerate():
    seg = convex_hull([(0, 0), (1, 0)])
    with pytest.raises(DegenerateCell):
        seg.normalized_volume()


def test_is_simplicial_boundary():
    simplex = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert simplex.is_simplicial_boundary()
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert square.is_simplicial_boundary()
    cube = convex_hull(list(itertools.product((0, 1), repeat=3)))
    assert not cube.is_simplicial_boundary()


def test_hull_idempotent():
    rng = random.Random(4)
    for _ in range(15):
        pts = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(8)]
        c = convex_hull(pts)
        again = convex_hull(c.vertices)
        assert again.vertices == c.vertices
        assert set(c.vertices) <= set(c.lattice_points())


def test_volume_unimodular_invariance():
    rng = random.Random(23)
    base = list(itertools.product((0, 1), repeat=3))
    cell = convex_hull(base)
    vol = cell.normalized_volume()
    for _ in range(6):
        u = random_unimodular(rng, 3)
        mapped = [tuple(int(sum(u.entries[r][c] * Fraction(p[c]) for c in range(3)))
                        for r in range(3)) for p in base]
        shift = (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
        mapped = [tuple(x + s for x, s in zip(p, shift)) for p in mapped]
        assert convex_hull(mapped).normalized_volume() == vol


def test_facet_system_irredundant():
    # dropping any facet inequality admits an extra integer point nearby
    c = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert len(c.inequalities) == 3
    assert len(c.inequalities) >= c.affine_dim + 1
    pts = set(c.lattice_points())
    for skip in range(len(c.inequalities)):
        kept = [iq for k, iq in enumerate(c.inequalities) if k != skip]
        box = [p for p in itertools.product(range(-3, 6), repeat=2)
               if all(c0 + sum(a * x for a, x in zip(cv, p)) >= 0
                      for c0, cv in kept)]
        assert set(box) > pts


def test_hull_brute_force_cross_check():
    # exhaustive facet enumeration oracle on random 4d point sets
    rng = random.Random(91)
    for _ in range(6):
        pts = sorted({tuple(rng.randint(-2, 2) for _ in range(4))
                      for _ in range(10)})
        cell = convex_hull(pts)
        if cell.affine_dim != 4:
            continue
        lattice = set(cell.lattice_points())
        for p in pts:
            assert p in lattice
        # every vertex must be a point of the input not expressible by others
        for v in cell.vertices:
            others = [p for p in pts if p != v]
            assert not _in_hull_caratheodory(tuple(others), v)
