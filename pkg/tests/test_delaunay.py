import itertools
import math
import random
from fractions import Fraction

import pytest

from perdel.catalog import gram
from perdel.delaunay import (delaunay_decomposition, enumerate_window,
                             quadratic_value, verify_empty_sphere,
                             window_radius)
from perdel.decomposition import canonical_class_key
from perdel.errors import NotPositiveDefinite, SphereNotEmpty
from perdel.linalg import Matrix
from perdel.polytope import convex_hull
from tests.conftest import conjugate_form, random_pd_form, random_unimodular


def brute_force_delaunay_classes_2d(q, window=2):
    """Oracle: empty-circle test over all point subsets in a small window.

    Enumerates candidate cells as maximal co-circular empty subsets around
    the origin and returns their canonical class keys.
    """
    pts = [p for p in itertools.product(range(-window, window + 1), repeat=2)]
    classes = set()
    for sub in itertools.combinations(pts, 3):
        cell = _circumscribe(q, sub, pts)
        if cell is not None and (0, 0) in cell:
            classes.add(canonical_class_key(cell))
    return classes


def _circumscribe(q, sub, pts):
    from perdel.linalg import Matrix as M, solve
    v0 = sub[0]
    rows = []
    rhs = []
    for v in sub[1:]:
        d = [v[i] - v0[i] for i in range(2)]
        rows.append([sum(2 * Fraction(d[i]) * q.entries[i][j] for i in range(2))
                     for j in range(2)])
        rhs.append(quadratic_value(q, v) - quadratic_value(q, v0))
    center = solve(M(rows), rhs)
    if center is None:
        return None
    rho = quadratic_value(q, [Fraction(v0[0]) - center[0],
                              Fraction(v0[1]) - center[1]])
    on = []
    for p in pts:
        d = quadratic_value(q, [Fraction(p[0]) - center[0],
                                Fraction(p[1]) - center[1]])
        if d < rho:
            return None
        if d == rho:
            on.append(p)
    if len(on) < 3:
        return None
    return tuple(sorted(on))


def test_identity_g2_square_class():
    q = Matrix.identity(2)
    d = delaunay_decomposition(q)
    assert len(d.cells) == 1
    assert len(d.cells[0].vertices) == 4
    oracle = brute_force_delaunay_classes_2d(q)
    mine = {canonical_class_key(c.lattice_points()) for c in d.cells}
    assert mine == oracle


def test_hexagonal_two_triangles():
    q = gram("A2")
    d = delaunay_decomposition(q)
    assert len(d.cells) == 2
    assert all(len(c.vertices) == 3 for c in d.cells)
    assert all(c.normalized_volume() == 1 for c in d.cells)
    oracle = brute_force_delaunay_classes_2d(q)
    mine = {canonical_class_key(c.lattice_points()) for c in d.cells}
    assert mine == oracle


def test_d4_cell_inventory(d4_decomp):
    counts = sorted(len(c.vertices) for c in d4_decomp.cells)
    assert counts == [8, 8, 8]
    assert all(c.is_simplicial_boundary() for c in d4_decomp.cells)
    assert d4_decomp.tiling_volume() == math.factorial(4)


def test_window_radius_values():
    assert window_radius(Matrix.identity(2)) == 8
    assert window_radius(gram("Dn", 4)) == 32
    assert window_radius(gram("E8")) == 64


def test_rejects_semidefinite():
    with pytest.raises(NotPositiveDefinite):
        delaunay_decomposition(Matrix([[1, 0], [0, 0]]))


def test_enumerate_window_identity():
    pts = enumerate_window(Matrix.identity(2), 2)
    assert set(pts) == {p for p in itertools.product((-1, 0, 1), repeat=2)
                        if p != (0, 0)}


def test_verify_empty_sphere_square():
    q = Matrix.identity(2)
    cell = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    window = enumerate_window(q, 8)
    cert = verify_empty_sphere(cell, q, window)
    assert cert.center == (Fraction(1, 2), Fraction(1, 2))
    assert cert.squared_radius == Fraction(1, 2)


def test_verify_empty_sphere_triangle_boundary_point():
    # (1,1) sits on the circumcircle: allowed, recorded, not an error
    q = Matrix.identity(2)
    tri = convex_hull([(0, 0), (1, 0), (0, 1)])
    window = [p for p in itertools.product(range(-2, 3), repeat=2) if any(p)]
    cert = verify_empty_sphere(tri, q, window)
    assert cert.center == (Fraction(1, 2), Fraction(1, 2))
    assert (1, 1) in cert.boundary_extras


def test_verify_empty_sphere_rejects_interior_point():
    q = Matrix.identity(2)
    big = convex_hull([(0, 0), (2, 0), (0, 2), (2, 2)])
    window = [p for p in itertools.product(range(-1, 4), repeat=2)]
    with pytest.raises(SphereNotEmpty) as err:
        verify_empty_sphere(big, q, [p for p in window if p != (1, 1)] + [(1, 1)])
    assert err.value.witness == (1, 1)


def test_every_cell_passes_empty_sphere_oracle(d4_decomp):
    q = d4_decomp.form
    for cell in d4_decomp.cells:
        cert = verify_empty_sphere(cell, q, d4_decomp.window)
        assert cert.squared_radius > 0


def test_tiling_random_forms():
    rng = random.Random(100)
    for _ in range(12):
        g = rng.randint(1, 3)
        q = random_pd_form(rng, g)
        d = delaunay_decomposition(q)
        assert d.tiling_volume() == math.factorial(g)


def test_g2_classification_squares_or_triangles():
    rng = random.Random(55)
    for _ in range(15):
        q = random_pd_form(rng, 2)
        d = delaunay_decomposition(q)
        counts = sorted(len(c.vertices) for c in d.cells)
        assert counts in ([4], [3, 3])
        if counts == [4]:
            # parallelogram: vertex sum of opposite corners agrees
            vs = d.cells[0].vertices
            sums = sorted(tuple(a + b for a, b in zip(p, r))
                          for p, r in itertools.combinations(vs, 2))
            assert sums[1] == sums[2] or len(set(sums)) < 6


def test_central_symmetry():
    rng = random.Random(77)
    for _ in range(8):
        q = random_pd_form(rng, rng.randint(2, 3))
        d = delaunay_decomposition(q)
        assert d.is_centrally_symmetric()


def test_unimodular_invariance():
    rng = random.Random(123)
    for _ in range(6):
        g = rng.randint(2, 3)
        q = random_pd_form(rng, g)
        u = random_unimodular(rng, g)
        d1 = delaunay_decomposition(q)
        d2 = delaunay_decomposition(conjugate_form(q, u))
        # u maps Del(u^T q u) onto Del(q)
        mapped = set()
        for c in d2.cells:
            pts = [tuple(int(sum(u.entries[r][k] * Fraction(p[k]) for k in range(g)))
                         for r in range(g)) for p in c.lattice_points()]
            mapped.add(canonical_class_key(pts))
        original = {canonical_class_key(c.lattice_points()) for c in d1.cells}
        assert mapped == original
