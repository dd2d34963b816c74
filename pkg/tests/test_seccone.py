import random
from fractions import Fraction

import pytest

from perdel.catalog import delta_rt, rt_refinements
from perdel.decomposition import canonical_class_key
from perdel.delaunay import delaunay_decomposition
from perdel.linalg import Matrix, ldlt_signature
from perdel.seccone import et_detect, secondary_cone
from perdel.sheaf import h0_general
from tests.conftest import conjugate_form, random_pd_form, random_unimodular


def test_square_cone(square_decomp):
    cert = secondary_cone(square_decomp)
    # the square's affine condition kills the off-diagonal entry: the cone
    # is the two-parameter family of diagonal forms
    assert cert.equality_solution_dim == 2
    assert cert.is_delaunay
    w = cert.witness
    assert w.entries[0][1] == 0
    assert ldlt_signature(w).is_positive_definite
    assert cert.voronoi_stratum_dim == 1


def test_square_et(square_decomp):
    rep = et_detect(square_decomp)
    assert rep.h0 == 1
    assert rep.voronoi_cone_dim == 1
    assert rep.et_flag is False


def test_d4_et(d4_decomp):
    rep = et_detect(d4_decomp)
    assert rep.h0 == 9
    assert rep.voronoi_cone_dim == 9
    assert rep.et_flag is False


def test_witness_roundtrip_random():
    rng = random.Random(321)
    for _ in range(5):
        g = rng.randint(2, 3)
        q = random_pd_form(rng, g)
        d = delaunay_decomposition(q)
        cert = secondary_cone(d)
        assert cert.is_delaunay
        rebuilt = delaunay_decomposition(cert.witness)
        assert rebuilt.canonical_key() == d.canonical_key()


def test_certificate_scale_invariance():
    rng = random.Random(17)
    q = random_pd_form(rng, 2)
    d1 = delaunay_decomposition(q)
    d2 = delaunay_decomposition(Matrix([[3 * x for x in row] for row in q.entries]))
    c1 = secondary_cone(d1)
    c2 = secondary_cone(d2)
    assert d1.canonical_key() == d2.canonical_key()
    assert c1.equality_solution_dim == c2.equality_solution_dim
    assert c1.is_delaunay and c2.is_delaunay


def test_certificate_unimodular_invariance():
    rng = random.Random(99)
    q = random_pd_form(rng, 3)
    u = random_unimodular(rng, 3)
    c1 = secondary_cone(delaunay_decomposition(q))
    c2 = secondary_cone(delaunay_decomposition(conjugate_form(q, u)))
    assert c1.equality_solution_dim == c2.equality_solution_dim
    assert c1.is_delaunay == c2.is_delaunay


def test_delta_rt_cone_and_et():
    rt = delta_rt()
    cert = secondary_cone(rt)
    assert cert.is_delaunay
    assert cert.equality_solution_dim == 9
    assert cert.voronoi_stratum_dim == 1
    rep = et_detect(rt)
    assert rep.h0 == 2
    assert rep.et_flag is True


def test_refinement_cones_and_certificates():
    refs = rt_refinements()
    outcomes = {}
    for ref in refs:
        cert = secondary_cone(ref)
        outcomes[ref.label] = cert
        if cert.is_delaunay:
            rebuilt = delaunay_decomposition(cert.witness)
            assert rebuilt.canonical_key() == ref.canonical_key()
        else:
            lam = cert.farkas
            assert lam and all(c > 0 for _i, _p, c in lam)
    witnesses = [l for l, c in outcomes.items() if c.is_delaunay]
    farkas = [l for l, c in outcomes.items() if not c.is_delaunay]
    assert len(witnesses) == 2 and len(farkas) == 2
    # the Delaunay ones are exactly the centrally symmetric combinations
    for ref in refs:
        assert outcomes[ref.label].is_delaunay == ref.is_centrally_symmetric()


def test_refinement_cone_inside_closure():
    # a refinement witness refines the parent: every Delaunay cell of the
    # witness sits inside a cell of the parent decomposition
    rt = delta_rt()
    refs = rt_refinements()
    parent_keys = rt.canonical_key()
    for ref in refs:
        cert = secondary_cone(ref)
        if not cert.is_delaunay:
            continue
        fine = delaunay_decomposition(cert.witness)
        for cell in fine.cells:
            inside = False
            for parent in rt.cells:
                for t in _candidate_shifts(cell, parent):
                    moved = [tuple(x + dt for x, dt in zip(p, t))
                             for p in cell.lattice_points()]
                    if set(moved) <= set(parent.lattice_points()):
                        inside = True
                        break
                if inside:
                    break
            assert inside


def _candidate_shifts(cell, parent):
    out = set()
    for p in parent.lattice_points():
        for v in cell.lattice_points():
            out.add(tuple(a - b for a, b in zip(p, v)))
    return out
