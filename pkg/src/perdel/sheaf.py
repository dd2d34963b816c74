"""Stratum dimensions h0 of periodic decompositions by exact linear algebra.

The space of sections assigns to each maximal cell class a function on its
lattice points, modulo affine functions per cell, subject to the gluing
condition that the difference across every shared face is affine on that
face.  h0 is the dimension of the glued space:

    h0 = dim ker(constraints) - (number of classes) * (g + 1).

The simplicial shortcut sums the per-cell quotient dimensions
l = |points| - dim - 1 and is valid when no face can carry a constraint;
the general method imposes the constraints explicitly and is the default
cross-check.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import HypothesisViolated, MissingWalls, NotPolytopal
from .linalg import Matrix, rank, row_echelon_ints
from .rationals import frac

METHOD_GENERAL = "general"
METHOD_SIMPLICIAL = "simplicial"
METHOD_PULLBACK = "pullback"


class StratumReport:
    """Computed stratum dimension of a decomposition, with provenance."""

    def __init__(self, h0, method, l_values=None, volume=None,
                 voronoi_cone_dim=None, et_flag=None):
        self.h0 = h0
        self.method = method
        self.l_values = list(l_values) if l_values is not None else None
        self.volume = volume
        self.voronoi_cone_dim = voronoi_cone_dim
        self.et_flag = et_flag

    def __repr__(self):
        return f"StratumReport(h0={self.h0}, method={self.method})"

    def to_json(self):
        data = {"h0": self.h0, "method": self.method}
        if self.l_values is not None:
            data["l_values"] = self.l_values
        if self.volume is not None:
            data["volume"] = self.volume
        if self.voronoi_cone_dim is not None:
            data["cone_dim"] = self.voronoi_cone_dim
        if self.et_flag is not None:
            data["et_flag"] = self.et_flag
        return data


def lhat_dim(cell) -> int:
    """dim of functions on the cell's lattice points modulo affine ones."""
    return len(cell.lattice_points()) - cell.affine_dim - 1


class SectionSpace:
    """Exact presentation of the section space of a decomposition.

    Variables are the values on each class representative's lattice points;
    rows impose affineness of cross-wall differences.  The per-cell affine
    block is checked to lie in the kernel on construction.
    """

    def __init__(self, decomposition, walls=None):
        if decomposition.fiber_rank != 0:
            raise NotPolytopal("section space requires a polytopal decomposition")
        self.decomposition = decomposition
        cells = decomposition.cells
        g = decomposition.ambient_dim
        self.var_index = {}
        for i, c in enumerate(cells):
            for p in c.lattice_points():
                self.var_index[(i, p)] = len(self.var_index)
        self.num_vars = len(self.var_index)
        self.affine_dim = len(cells) * (g + 1)
        self.rows = []
        if walls is None:
            walls = decomposition.walls()
        if walls is None:
            raise MissingWalls("decomposition carries no wall data")
        for w in walls:
            self.rows.extend(self._wall_rows(w))
        self.rank = _sparse_rank(self.rows, self.num_vars)
        self.kernel_dim = self.num_vars - self.rank
        self.h0 = self.kernel_dim - self.affine_dim
        self._check_affine_block()

    def _wall_rows(self, wall):
        pts = wall.face_points
        dim = wall.face_dim
        if len(pts) <= dim + 1:
            return []
        anchors = _affine_anchor_subset(pts, dim)
        anchor_set = set(anchors)
        rows = []
        for y in pts:
            if y in anchor_set:
                continue
            lam = _affine_coefficients(anchors, y)
            row = {}
            self._accumulate(row, wall.a, y, Fraction(1))
            self._accumulate(row, wall.b, tuple(a - b for a, b in zip(y, wall.t)),
                             Fraction(-1))
            for s, l in zip(anchors, lam):
                if l == 0:
                    continue
                self._accumulate(row, wall.a, s, -l)
                self._accumulate(row, wall.b, tuple(a - b for a, b in zip(s, wall.t)), l)
            row = {k: v for k, v in row.items() if v != 0}
            if row:
                rows.append(row)
        return rows

    def _accumulate(self, row, cell_idx, point, coeff):
        var = self.var_index[(cell_idx, tuple(point))]
        row[var] = row.get(var, Fraction(0)) + coeff

    def _check_affine_block(self):
        """Per-cell affine functions must satisfy every constraint row."""
        g = self.decomposition.ambient_dim
        cells = self.decomposition.cells
        for i in range(len(cells)):
            for k in range(g + 1):
                vec = {}
                for p in cells[i].lattice_points():
                    val = Fraction(1) if k == g else Fraction(p[k])
                    vec[self.var_index[(i, p)]] = val
                for row in self.rows:
                    s = sum((coeff * vec.get(var, Fraction(0))
                             for var, coeff in row.items()), Fraction(0))
                    if s != 0:
                        raise AssertionError(
                            "affine block violates a gluing row; wall data is inconsistent"
                        )


def _affine_anchor_subset(pts, dim):
    """Lexicographically smallest affinely independent subset of size dim+1."""
    anchors = [pts[0]]
    echelon = []
    for p in pts[1:]:
        if len(anchors) == dim + 1:
            break
        row = [a - b for a, b in zip(p, anchors[0])]
        for pc, er in echelon:
            if row[pc] != 0:
                a, b = er[pc], row[pc]
                row = [a * x - b * y for x, y in zip(row, er)]
        pivot = next((c for c, v in enumerate(row) if v != 0), None)
        if pivot is None:
            continue
        g = 0
        for v in row:
            g = math.gcd(g, abs(v))
        if g > 1:
            row = [v // g for v in row]
        echelon.append((pivot, row))
        echelon.sort(key=lambda t: t[0])
        anchors.append(p)
    if len(anchors) != dim + 1:
        raise AssertionError("face points do not span the face dimension")
    return anchors


def _affine_coefficients(anchors, y):
    """Barycentric coefficients lam with y = sum lam_s s, sum lam = 1."""
    from .linalg import solve
    rows = [[Fraction(1)] * len(anchors)]
    rhs = [Fraction(1)]
    dim = len(anchors[0])
    for d in range(dim):
        rows.append([Fraction(s[d]) for s in anchors])
        rhs.append(Fraction(y[d]))
    lam = solve(Matrix(rows), rhs)
    if lam is None:
        raise AssertionError("face point outside the affine hull of its anchors")
    return lam


def _sparse_rank(rows, num_vars):
    if not rows:
        return 0
    touched = sorted({v for row in rows for v in row})
    remap = {v: i for i, v in enumerate(touched)}
    dense = []
    for row in rows:
        r = [Fraction(0)] * len(touched)
        for v, c in row.items():
            r[remap[v]] = c
        dense.append(r)
    return rank(Matrix(dense, cols=len(touched)))


def codim1_walls_by_facets(decomposition):
    """Codimension-1 walls by matching class facets across translations.

    Requires every cell's lattice points to be exactly its vertices (true
    for Delaunay cells); each facet point set then matches its partner's
    under a unique translation, so one pass over all class facets finds
    every codimension-1 wall class.  Used for decompositions too large for
    the all-faces pairwise search.
    """
    from .decomposition import Wall, canonical_class_key
    from .errors import NotFaceFitting
    cells = decomposition.cells
    buckets = {}
    for i, cell in enumerate(cells):
        if len(cell.lattice_points()) != len(cell.vertices):
            raise NotFaceFitting("facet matching requires lattice points == vertices")
        for fs in cell.facet_vertex_sets():
            fpts = tuple(sorted(cell.vertices[k] for k in fs))
            buckets.setdefault(canonical_class_key(fpts), []).append((i, fpts))
    walls = []
    for key in sorted(buckets):
        items = buckets[key]
        if len(items) != 2:
            raise NotFaceFitting(
                f"facet shared by {len(items)} cells; decomposition is not face-fitting"
            )
        (i, fa), (j, fb) = items
        t = tuple(a - b for a, b in zip(fa[0], fb[0]))
        if tuple(sorted(tuple(x + dt for x, dt in zip(p, t)) for p in fb)) != fa:
            # anchors of the sorted tuples may differ; recover t from the keys
            base_a = _key_anchor(fa, key)
            base_b = _key_anchor(fb, key)
            t = tuple(a - b for a, b in zip(base_a, base_b))
        walls.append(Wall(i, j, t, fa, decomposition.ambient_dim - 1))
    return walls


def _key_anchor(pts, key):
    for base in pts:
        cand = tuple(sorted(tuple(x - b for x, b in zip(p, base)) for p in pts))
        if cand == tuple(key):
            return base
    raise AssertionError("canonical anchor not found")


def _constraint_walls(decomposition):
    cells = decomposition.cells
    if len(cells) > 200 and all(
        c.is_simplicial_boundary()
        and len(c.lattice_points()) == len(c.vertices)
        for c in cells
    ):
        # every shared face is a face of a simplicial-boundary cell with no
        # extra lattice points, hence a simplex: only codimension-1 walls
        # need materializing and none of them can carry a constraint
        return codim1_walls_by_facets(decomposition)
    return decomposition.walls()


def h0_general(decomposition) -> StratumReport:
    """Stratum dimension by the full gluing computation."""
    if decomposition.fiber_rank != 0:
        raise NotPolytopal("use h0_pullback for pullback decompositions")
    space = SectionSpace(decomposition, walls=_constraint_walls(decomposition))
    return StratumReport(
        space.h0,
        METHOD_GENERAL,
        l_values=[lhat_dim(c) for c in decomposition.cells],
        volume=decomposition.tiling_volume(),
    )


def h0_simplicial(decomposition) -> StratumReport:
    """Stratum dimension by the per-cell sum, under the simplicial hypothesis."""
    if decomposition.fiber_rank != 0:
        raise NotPolytopal("use h0_pullback for pullback decompositions")
    for c in decomposition.cells:
        if not c.is_simplicial_boundary():
            raise HypothesisViolated(
                f"cell {c} has a non-simplex proper face; the per-cell sum "
                "formula does not apply"
            )
    lv = [lhat_dim(c) for c in decomposition.cells]
    return StratumReport(
        sum(lv),
        METHOD_SIMPLICIAL,
        l_values=lv,
        volume=decomposition.tiling_volume(),
    )


def h0_pullback(base, fiber_rank, total_dim) -> int:
    """Stratum dimension of the pullback of a polytopal decomposition.

    `base` is the h0 of the polytopal part in dimension total_dim -
    fiber_rank (an int or a StratumReport); fiber_rank == total_dim means the
    one-big-cell decomposition, whose stratum has dimension g(g+1)/2.
    """
    a, g = fiber_rank, total_dim
    if not 0 <= a <= g:
        raise ValueError("fiber rank must lie between 0 and the ambient dimension")
    base_h0 = base.h0 if isinstance(base, StratumReport) else int(base or 0)
    if a == g:
        base_h0 = 0
    return base_h0 + a * (a + 1) // 2 + a * (g - a)


def volume_upper_bound_check(decomposition) -> bool:
    """h0 < g! (the normalized volume of the torus), a consistency assertion."""
    report = h0_general(decomposition)
    return report.h0 < decomposition.tiling_volume()
