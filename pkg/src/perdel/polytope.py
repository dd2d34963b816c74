"""Exact lattice polytopes: hulls, faces, lattice points, volumes.

Cells are convex hulls of points of Z^g for g <= 9.  Everything is integer
or rational arithmetic: facet inequalities are primitive integer affine
functionals c0 + <c, x> >= 0 (inner pointing), affine hulls are integer
equation systems, and normalized volume is the exact integer g! * vol.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .conehull import ConeHull
from .errors import DegenerateCell
from .linalg import Matrix, kernel_basis, row_echelon_ints, solve
from .rationals import frac

LatticeVector = tuple


def _primitive_affine(c0, cvec):
    g = abs(c0)
    for v in cvec:
        g = math.gcd(g, abs(v))
    if g > 1:
        c0 //= g
        cvec = tuple(v // g for v in cvec)
    return (c0, tuple(cvec))


def _as_int_affine(c0, cvec):
    den = c0.denominator
    for v in cvec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return _primitive_affine(int(c0 * den), tuple(int(v * den) for v in cvec))


class Cell:
    """Lattice polytope given by its vertex set, with exact face data.

    Construct through :func:`convex_hull`; the constructor itself expects
    hull output and is not meant to be called with raw point sets.
    """

    __slots__ = ("ambient_dim", "vertices", "affine_dim", "equations",
                 "inequalities", "_facet_vertex_sets", "_lattice_points",
                 "_volume")

    def __init__(self, ambient_dim, vertices, affine_dim, equations,
                 inequalities, facet_vertex_sets, lattice_points=None):
        self.ambient_dim = ambient_dim
        self.vertices = tuple(sorted(tuple(int(x) for x in v) for v in vertices))
        self.affine_dim = affine_dim
        self.equations = tuple(sorted(equations))
        self.inequalities = tuple(sorted(inequalities))
        self._facet_vertex_sets = facet_vertex_sets
        self._lattice_points = lattice_points
        self._volume = None

    # -- basic queries -------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Cell) and self.vertices == other.vertices \
            and self.ambient_dim == other.ambient_dim

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        return f"Cell(dim={self.affine_dim}/{self.ambient_dim}, {len(self.vertices)} vertices)"

    def translate(self, t):
        return Cell(
            self.ambient_dim,
            [tuple(x + dt for x, dt in zip(v, t)) for v in self.vertices],
            self.affine_dim,
            [(c0 - sum(c * dt for c, dt in zip(cv, t)), cv) for c0, cv in self.equations],
            [(c0 - sum(c * dt for c, dt in zip(cv, t)), cv) for c0, cv in self.inequalities],
            None,
            lattice_points=None if self._lattice_points is None else
            tuple(tuple(x + dt for x, dt in zip(p, t)) for p in self._lattice_points),
        )

    def contains_point(self, p):
        """Exact membership for a rational point (sequence of Fractions)."""
        for c0, cv in self.equations:
            if c0 + sum(c * x for c, x in zip(cv, p)) != 0:
                return False
        for c0, cv in self.inequalities:
            if c0 + sum(c * x for c, x in zip(cv, p)) < 0:
                return False
        return True

    def facet_vertex_sets(self):
        """Vertex-index tuples of the facets ((affine_dim-1)-faces)."""
        if self._facet_vertex_sets is None:
            self._facet_vertex_sets = tuple(
                tuple(i for i, v in enumerate(self.vertices)
                      if c0 + sum(c * x for c, x in zip(cv, v)) == 0)
                for c0, cv in self.inequalities
            )
        return self._facet_vertex_sets

    def minimal_face_lattice_points(self, p):
        """All lattice points of the smallest face containing rational point p.

        Returns None when p is not in the cell.
        """
        if not self.contains_point(p):
            return None
        active = [(c0, cv) for c0, cv in self.inequalities
                  if c0 + sum(c * x for c, x in zip(cv, p)) == 0]
        pts = [q for q in self.lattice_points()
               if all(c0 + sum(c * x for c, x in zip(cv, q)) == 0 for c0, cv in active)]
        return tuple(sorted(pts))

    # -- lattice points ------------------------------------------------------

    def lattice_points(self):
        """Integer points of the cell (boundary included), by box scan."""
        if self._lattice_points is None:
            lo = [min(v[d] for v in self.vertices) for d in range(self.ambient_dim)]
            hi = [max(v[d] for v in self.vertices) for d in range(self.ambient_dim)]
            eqs = list(self.equations)
            ineqs = list(self.inequalities)
            found = []
            for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
                ok = True
                for c0, cv in eqs:
                    if c0 + sum(c * x for c, x in zip(cv, p)) != 0:
                        ok = False
                        break
                if not ok:
                    continue
                for c0, cv in ineqs:
                    if c0 + sum(c * x for c, x in zip(cv, p)) < 0:
                        ok = False
                        break
                if ok:
                    found.append(p)
            self._lattice_points = tuple(sorted(found))
        return self._lattice_points

    # -- metric/combinatorial properties --------------------------------------

    def normalized_volume(self):
        """g! times the Euclidean volume; exact nonnegative integer."""
        if self.affine_dim != self.ambient_dim:
            raise DegenerateCell(
                f"cell has affine dimension {self.affine_dim} < ambient {self.ambient_dim}"
            )
        if self._volume is None:
            total = 0
            apex = self.vertices[0]
            for fs in self.facet_vertex_sets():
                fverts = [self.vertices[i] for i in fs]
                if apex in fverts:
                    continue
                for sub in _triangulate_vertices(fverts, self.ambient_dim - 1):
                    mat = [[x - a for x, a in zip(v, apex)] for v in sub]
                    total += abs(_det_int(mat))
            self._volume = total
        return self._volume

    def is_simplicial_boundary(self):
        """True iff every proper face has exactly dim + 1 vertices.

        It suffices to check facets: all faces of a simplex are simplices.
        """
        if self.affine_dim <= 1:
            return True
        return all(len(fs) == self.affine_dim for fs in self.facet_vertex_sets())

    def to_json(self):
        return {"dim": self.ambient_dim, "vertices": [list(v) for v in self.vertices]}


def _det_int(rows):
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            sel = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if sel is None:
                return 0
            m[k], m[sel] = m[sel], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _triangulate_vertices(verts, dim):
    """Triangulate conv(verts) (affinely spanning, dimension dim) recursively."""
    if len(verts) == dim + 1:
        return [tuple(verts)]
    cell = convex_hull(verts)
    apex = cell.vertices[0]
    simplices = []
    for fs in cell.facet_vertex_sets():
        fverts = [cell.vertices[i] for i in fs]
        if apex in fverts:
            continue
        for sub in _triangulate_vertices(fverts, dim - 1):
            simplices.append(sub + (apex,))
    return simplices


def convex_hull(points) -> Cell:
    """Convex hull of a nonempty finite set of integer points.

    The result records the extreme points as vertices, primitive integer
    facet inequalities, affine-hull equations, and facet vertex sets.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    g = len(pts[0])
    v0 = pts[0]
    dirs = [tuple(x - y for x, y in zip(p, v0)) for p in pts[1:]]

    # affine basis of the direction space
    echelon_rows, pivots = row_echelon_ints(dirs, g) if dirs else ([], [])
    r = len(pivots)
    basis = _independent_subset(dirs, r, g)

    # affine-hull equations: integer kernel of the direction span
    equations = []
    if r < g:
        ker = kernel_basis([list(map(Fraction, b)) for b in basis]) if basis else \
            Matrix.identity(g)
        for j in range(ker.cols):
            col = [ker.entries[i][j] for i in range(g)]
            den = 1
            for x in col:
                den = den * x.denominator // math.gcd(den, x.denominator)
            cvec = [int(x * den) for x in col]
            if next((v for v in cvec if v != 0), 0) < 0:
                cvec = [-v for v in cvec]
            c0 = -sum(c * x for c, x in zip(cvec, v0))
            equations.append(_primitive_affine(c0, tuple(cvec)))

    if r == 0:
        return Cell(g, [v0], 0, equations, [], tuple())

    # coordinates of every point in the affine frame (v0; basis), scaled integral
    bmat = Matrix([[Fraction(b[i]) for b in basis] for i in range(g)])
    coords = []
    den = 1
    for p in pts:
        d = [Fraction(x - y) for x, y in zip(p, v0)]
        y = solve(bmat, d)
        coords.append(y)
        for x in y:
            den = den * x.denominator // math.gcd(den, x.denominator)
    rays = [(1,) + tuple(int(x * den) for x in y) for y in coords]

    if r == 1:
        # segment: vertices are the coordinate extremes along the direction
        ys = [y[0] for y in coords]
        imin = ys.index(min(ys))
        imax = ys.index(max(ys))
        verts = [pts[imin], pts[imax]]
        b = tuple(basis[0])
        ineqs = []
        for cv, idx in ((b, imin), (tuple(-x for x in b), imax)):
            c0 = -sum(c * x for c, x in zip(cv, pts[idx]))
            ineqs.append(_primitive_affine(c0, cv))
        return Cell(g, verts, 1, equations, ineqs, None)

    hull = ConeHull(rays)
    verts = [pts[i] for i in hull.extreme]

    # convert reduced-space facet normals to ambient affine functionals
    minv = _left_inverse(bmat)  # r x g rational, minv * bmat = I
    ineqs = []
    for normal, _tight in hull.facets:
        n0, nbar = normal[0], normal[1:]
        cv = [Fraction(0)] * g
        for i in range(r):
            if nbar[i]:
                for j in range(g):
                    cv[j] += Fraction(nbar[i] * den) * minv.entries[i][j]
        c0 = Fraction(n0) - sum(c * x for c, x in zip(cv, v0))
        ineqs.append(_as_int_affine(c0, cv))
    cell = Cell(g, verts, r, equations, sorted(set(ineqs)), None)
    return cell


def _independent_subset(dirs, r, g):
    out = []
    echelon = []
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
            gg = math.gcd(gg, abs(v))
        if gg > 1:
            row = [v // gg for v in row]
        echelon.append((pivot, row))
        echelon.sort(key=lambda t: t[0])
        out.append(d)
        if len(out) == r:
            break
    return out


def _left_inverse(bmat):
    """Rational left inverse (r x g) of a full-column-rank g x r matrix."""
    bt = bmat.transpose()
    gram = bt.mul(bmat)
    cols = []
    for j in range(bt.cols):
        rhs = [bt.entries[i][j] for i in range(bt.rows)]
        cols.append(solve(gram, rhs))
    return Matrix([[cols[j][i] for j in range(bt.cols)] for i in range(bt.rows)])
