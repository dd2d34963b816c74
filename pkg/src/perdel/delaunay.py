"""Delaunay decompositions of Z^g for positive definite rational forms.

The decomposition is computed through the star of the origin: lattice
points x of a finite window are lifted to rays (x, q(x)) and the facets of
the cone they span are exactly the Delaunay cells incident to the origin.
Each facet carries an empty-sphere certificate that is rigorous over the
whole lattice, not just the window: a sphere through the origin with
squared radius rho can only contain lattice points of norm < 4*rho, so once
the window covers radius 4*rho_max and every window point is on or outside
every sphere, the star is provably complete and correct.  The window grows
geometrically until that self-certification succeeds.

Every maximal Delaunay cell class has a representative with the origin as
a vertex, so deduplicating the star modulo translation yields the full set
of cell classes.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .conehull import ConeHull
from .decomposition import PeriodicDecomposition, canonical_class_key
from .errors import (NoCircumsphere, NotPositiveDefinite, SphereNotEmpty,
                     WindowUnstable)
from .linalg import Matrix, ldlt_signature, solve
from .polytope import Cell, convex_hull
from .rationals import frac, isqrt_floor

_MAX_GROWTH = 24


class EmptySphereCertificate:
    """A q-sphere through the vertices of a cell, empty of lattice points.

    Window points strictly inside the sphere are forbidden; extra lattice
    points exactly on the sphere are legal (they witness that the cell is
    not maximal, but the sphere is still empty).
    """

    __slots__ = ("center", "squared_radius", "boundary_extras")

    def __init__(self, center, squared_radius, boundary_extras=()):
        self.center = tuple(center)
        self.squared_radius = squared_radius
        self.boundary_extras = tuple(boundary_extras)

    def __repr__(self):
        return f"EmptySphereCertificate(center={self.center}, r2={self.squared_radius})"


def quadratic_value(q: Matrix, x) -> Fraction:
    """q(x) = x^T Q x for an integer or rational vector."""
    total = Fraction(0)
    n = q.rows
    for i in range(n):
        xi = frac(x[i])
        if xi == 0:
            continue
        row = q.entries[i]
        total += xi * sum((row[j] * frac(x[j]) for j in range(n)), Fraction(0))
    return total


def window_radius(q: Matrix) -> Fraction:
    """Conservative bound R with every origin-incident cell inside q(x) <= R.

    Four times the trace: a crude covering-radius surrogate.  The star
    construction does not enumerate a window this large up front; it grows a
    small window until the empty-sphere certificates close, which stops far
    below this bound in practice.
    """
    if not q.is_symmetric():
        raise NotPositiveDefinite("form must be symmetric")
    return 4 * sum((q.entries[i][i] for i in range(q.rows)), Fraction(0))


def _integer_scaled(q: Matrix):
    den = 1
    for row in q.entries:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    qi = Matrix([[x * den for x in row] for row in q.entries])
    return qi, den


def _ldl(q: Matrix):
    """Diagonal d and unit-upper coefficients for q(x) = sum d_i (x_i + sum_j>i l_ij x_j)^2."""
    n = q.rows
    a = [[q.entries[i][j] for j in range(n)] for i in range(n)]
    d = []
    lmat = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        dk = a[k][k]
        if dk <= 0:
            raise NotPositiveDefinite("form is not positive definite")
        d.append(dk)
        for j in range(k + 1, n):
            lmat[k][j] = a[k][j] / dk
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] -= a[i][k] * a[k][j] / dk
    return d, lmat


def enumerate_window(q: Matrix, radius) -> list:
    """All nonzero x in Z^g with q(x) <= radius, exactly (Fincke-Pohst)."""
    n = q.rows
    d, lmat = _ldl(q)
    radius = frac(radius)
    out = []
    x = [0] * n

    def descend(k, remaining):
        # bound (x_k + c_k)^2 * d_k <= remaining, c_k from already-fixed tail
        c = sum((lmat[k][j] * x[j] for j in range(k + 1, n)), Fraction(0))
        bound = remaining / d[k]
        lo, hi = _int_interval(c, bound)
        for v in range(lo, hi + 1):
            x[k] = v
            rem = remaining - d[k] * (v + c) ** 2
            if k == 0:
                if any(x):
                    out.append(tuple(x))
            else:
                descend(k - 1, rem)
        x[k] = 0

    descend(n - 1, radius)
    return sorted(out)


def _int_interval(c, bound):
    """Integers v with (v + c)^2 <= bound (c, bound rational, bound >= 0)."""
    if bound < 0:
        return 0, -1
    r = isqrt_floor(bound)
    lo = -(r + 1) - _ceil_frac(c)
    hi = (r + 1) - _floor_frac(c)
    while (lo + c) ** 2 > bound:
        lo += 1
        if lo > hi:
            return 0, -1
    while (hi + c) ** 2 > bound:
        hi -= 1
    return lo, hi


def _floor_frac(c):
    return c.numerator // c.denominator


def _ceil_frac(c):
    return -((-c.numerator) // c.denominator)


def _sphere_from_facet(qi: Matrix, normal):
    """Center and rho of the empty sphere of a star facet (scaled metric).

    The facet normal (abar, ah) of the lifted cone satisfies
    ah*q(x) + <abar, x> = 0 on the cell, i.e. 2 Q c = -abar / ah.
    """
    g = qi.rows
    ah = normal[-1]
    abar = normal[:-1]
    rows = [[2 * ah * qi.entries[i][j] for j in range(g)] for i in range(g)]
    center = solve(Matrix(rows), [Fraction(-a) for a in abar])
    rho = quadratic_value(qi, center)
    return center, rho


def delaunay_star(q: Matrix, window_scale=1):
    """Certified star of the origin.

    Returns (window, facets, scale) where facets is a list of
    (vertex point tuple incl. origin, center, rho) in the *scaled* integer
    metric, and window is the lattice point list that certified them.
    """
    sig = ldlt_signature(q)
    if not sig.is_positive_definite:
        raise NotPositiveDefinite("Delaunay decompositions require a positive definite form")
    qi, scale = _integer_scaled(q)
    radius = 2 * max(qi.entries[i][i] for i in range(qi.rows)) * max(1, int(window_scale))
    for _attempt in range(_MAX_GROWTH):
        window = enumerate_window(qi, radius)
        qvals = {x: quadratic_value(qi, x) for x in window}
        order = sorted(range(len(window)), key=lambda i: (qvals[window[i]], window[i]))
        rays = [window[i] + (int(qvals[window[i]]),) for i in range(len(window))]
        hull = ConeHull(rays, insertion_order=order)
        ok = True
        rho_max = Fraction(0)
        facets = []
        for normal, tight in hull.facets:
            if normal[-1] <= 0:
                ok = False
                break
            center, rho = _sphere_from_facet(qi, normal)
            rho_max = max(rho_max, rho)
            verts = ((0,) * q.rows,) + tuple(window[i] for i in tight)
            facets.append((tuple(sorted(verts)), tuple(center), rho))
        if ok and 4 * rho_max <= radius:
            return window, facets, scale
        need = 4 * rho_max if ok and 4 * rho_max > radius else 0
        radius = max(radius * 2, _ceil_frac(frac(need)))
    raise WindowUnstable("window failed to stabilize while growing the Delaunay star")


def delaunay_decomposition(q: Matrix, with_walls=False, window_scale=1) -> PeriodicDecomposition:
    """All maximal Delaunay cell classes of Del_q modulo Z^g, certified.

    Cells come out merged (co-spherical lifted points stay one facet), with
    the empty-sphere data attached.  The tiling and central-symmetry
    invariants are asserted before returning.
    """
    window, facets, scale = delaunay_star(q, window_scale=window_scale)
    g = q.rows
    classes = {}
    for verts, center, rho in facets:
        key = canonical_class_key(verts)
        classes.setdefault(key, []).append((verts, center, rho))
    star_size = sum(len(v) for v in classes.values())
    point_total = sum(len(k) for k in classes.keys())
    if star_size != point_total:
        raise WindowUnstable(
            f"star has {star_size} cells but classes predict {point_total}"
        )
    cells = []
    certificates = []
    for key in sorted(classes.keys()):
        cell = convex_hull(key)
        if cell.vertices != tuple(sorted(key)):
            raise WindowUnstable("Delaunay cell has non-vertex lattice points")
        cell._lattice_points = tuple(sorted(key))
        cells.append(cell)
        verts, center, rho = classes[key][0]
        shift = _class_shift(verts, key)
        certificates.append(EmptySphereCertificate(
            [frac(c) - s for c, s in zip(center, shift)],
            rho / scale,
        ))
    decomp = PeriodicDecomposition(g, 0, cells, form=q, window=window)
    decomp.certificates = certificates
    key_set = {canonical_class_key(c.lattice_points()) for c in cells}
    neg_set = {canonical_class_key([tuple(-x for x in p) for p in k]) for k in key_set}
    if key_set != neg_set:
        raise WindowUnstable("star violates central symmetry")
    vol = decomp.tiling_volume()
    expected = math.factorial(g)
    if vol != expected:
        raise WindowUnstable(f"tiling volume {vol} != g! = {expected}")
    if with_walls:
        decomp.walls()
    return decomp


def _class_shift(verts, key):
    """Translation taking the star cell verts to its canonical translate key."""
    sorted_verts = sorted(verts)
    for base in sorted_verts:
        cand = tuple(sorted(tuple(x - b for x, b in zip(p, base)) for p in sorted_verts))
        if cand == tuple(key):
            return base
    raise AssertionError("canonical shift not found")


def verify_empty_sphere(cell: Cell, q: Matrix, window) -> EmptySphereCertificate:
    """Independent empty-sphere check from the cell's vertices alone.

    Solves for a q-circumcenter in the affine hull of the cell, then tests
    every window point: strictly inside is fatal, on the sphere is recorded
    (such points witness non-maximality but not non-emptiness).
    """
    verts = cell.vertices
    if not verts:
        raise NoCircumsphere("cell has no vertices")
    g = q.rows
    v0 = verts[0]
    dirs = [tuple(a - b for a, b in zip(v, v0)) for v in verts[1:]]
    # center = v0 + B mu with B an affine basis; equal distance to all vertices
    basis = [d for d in _greedy_basis(dirs)]
    rows = []
    rhs = []
    for v, d in zip(verts[1:], dirs):
        # q(v - c) = q(v0 - c)  <=>  2 (v - v0)^T Q (c - v0) = q(v - v0)
        row = []
        for b in basis:
            row.append(sum(2 * frac(d[i]) * q.entries[i][j] * frac(b[j])
                           for i in range(g) for j in range(g)))
        rows.append(row)
        rhs.append(quadratic_value(q, d))
    mu = solve(Matrix(rows) if rows else Matrix([], cols=0), rhs) if rows else []
    if rows and mu is None:
        raise NoCircumsphere("vertices are not co-spherical for this form")
    center = [frac(x) for x in v0]
    for m, b in zip(mu, basis):
        for i in range(g):
            center[i] += m * b[i]
    rho = quadratic_value(q, [frac(a) - c for a, c in zip(v0, center)])
    for v in verts[1:]:
        if quadratic_value(q, [frac(a) - c for a, c in zip(v, center)]) != rho:
            raise NoCircumsphere("vertices are not co-spherical for this form")
    vert_set = set(verts)
    extras = []
    worst = None
    for y in window:
        y = tuple(y)
        if y in vert_set:
            continue
        dist = quadratic_value(q, [frac(a) - c for a, c in zip(y, center)])
        if dist < rho:
            if worst is None or (dist, y) < worst:
                worst = (dist, y)
        elif dist == rho:
            extras.append(y)
    if worst is not None:
        raise SphereNotEmpty(
            f"lattice point {worst[1]} lies strictly inside", witness=worst[1]
        )
    return EmptySphereCertificate(center, rho, extras)


def _greedy_basis(dirs):
    import math as _math
    echelon = []
    out = []
    for d in dirs:
        row = list(d)
        for pc, er in echelon:
            if row[pc] != 0:
                a, b = er[pc], row[pc]
                row = [a * x - b * y for x, y in zip(row, er)]
        pivot = next((c for c, v in enumerate(row) if v != 0), None)
        if pivot is None:
            continue
        gg = 0
        for v in row:
            gg = _math.gcd(gg, abs(v))
        if gg > 1:
            row = [v // gg for v in row]
        echelon.append((pivot, row))
        echelon.sort(key=lambda t: t[0])
        out.append(d)
    return out
