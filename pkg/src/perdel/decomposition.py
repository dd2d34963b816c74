"""Periodic polytopal decompositions of Z^g and their wall structure.

A periodic decomposition is stored as a finite list of maximal cell classes
modulo translation by Z^g, each represented by a canonical translate that
has the origin among its lattice points.  Walls record every shared face
(of every dimension) between class representatives and their translates.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputFormatError, NotFaceFitting
from .polytope import Cell, convex_hull


def canonical_class_key(points):
    """Canonical form of a lattice point set modulo translation.

    Minimizes the sorted translated tuple over all choices of base point;
    the winning translate contains the origin.
    """
    pts = [tuple(p) for p in points]
    best = None
    for base in pts:
        cand = tuple(sorted(tuple(x - b for x, b in zip(p, base)) for p in pts))
        if best is None or cand < best:
            best = cand
    return best


class Wall:
    """A shared face between cell class `a` and the translate of class `b` by `t`.

    `face_points` are all lattice points of the face, in class-a coordinates.
    """

    __slots__ = ("a", "b", "t", "face_points", "face_dim")

    def __init__(self, a, b, t, face_points, face_dim):
        self.a = a
        self.b = b
        self.t = tuple(t)
        self.face_points = tuple(sorted(tuple(p) for p in face_points))
        self.face_dim = face_dim

    def __repr__(self):
        return f"Wall({self.a},{self.b},t={self.t},dim={self.face_dim},{len(self.face_points)} pts)"

    def to_json(self):
        return {"a": self.a, "b": self.b, "t": list(self.t), "face_dim": self.face_dim}


class PeriodicDecomposition:
    """Finite description of an X-periodic face-fitting decomposition.

    Parameters
    ----------
    ambient_dim : int
        Dimension g of the ambient lattice Z^g (total, including any fiber).
    fiber_rank : int
        0 for polytopal decompositions; a > 0 marks the pullback of a
        polytopal decomposition from dimension g - a (cells then live in
        Z^(g-a) coordinates and no unbounded geometry is materialized).
    cells : list of Cell
        Maximal cell class representatives (canonical translates).
    """

    def __init__(self, ambient_dim, fiber_rank, cells, walls=None,
                 form=None, window=None):
        self.ambient_dim = ambient_dim
        self.fiber_rank = fiber_rank
        self.cells = list(cells)
        self._walls = walls
        self.form = form          # optional generating quadratic form (Matrix)
        self.window = window      # optional list of lattice points used to build it

    # -- basic invariants ------------------------------------------------------

    @property
    def base_dim(self):
        return self.ambient_dim - self.fiber_rank

    def canonical_key(self):
        """Order-free identity of the decomposition (set of cell class keys)."""
        return tuple(sorted(canonical_class_key(c.lattice_points()) for c in self.cells))

    def tiling_volume(self):
        """Sum of normalized volumes over the cell classes; g! for a tiling."""
        return sum(c.normalized_volume() for c in self.cells)

    def is_centrally_symmetric(self):
        """True iff the set of cell classes is stable under x -> -x."""
        keys = {canonical_class_key(c.lattice_points()) for c in self.cells}
        neg = {canonical_class_key([tuple(-x for x in p) for p in c.lattice_points()])
               for c in self.cells}
        return keys == neg

    def vertex_count_multiset(self):
        return tuple(sorted(len(c.vertices) for c in self.cells))

    # -- walls -----------------------------------------------------------------

    def walls(self):
        """All shared faces (every dimension) between representatives/translates."""
        if self._walls is None:
            self._walls = compute_walls(self)
        return self._walls

    def codim1_walls(self):
        return [w for w in self.walls() if w.face_dim == self.base_dim - 1]

    def wall_hyperplane_class_count(self):
        """Number of distinct wall hyperplane families (normal up to sign)."""
        normals = set()
        for w in self.codim1_walls():
            cell = self.cells[w.a]
            face = set(w.face_points)
            for c0, cv in cell.inequalities:
                tight = [p for p in cell.lattice_points()
                         if c0 + sum(c * x for c, x in zip(cv, p)) == 0]
                if set(tight) == face:
                    key = max(cv, tuple(-v for v in cv))
                    normals.add(key)
                    break
        return len(normals)

    # -- serialization ---------------------------------------------------------

    def to_json(self, include_walls=True):
        data = {
            "dim": self.ambient_dim,
            "fiber_rank": self.fiber_rank,
            "cells": [c.to_json() for c in self.cells],
        }
        if include_walls:
            data["walls"] = [w.to_json() for w in self.walls()]
        if self.window is not None:
            data["window"] = [list(p) for p in sorted(self.window)]
        return data

    @classmethod
    def from_json(cls, data):
        try:
            dim = int(data["dim"])
            fiber = int(data.get("fiber_rank", 0))
            cells = [convex_hull([tuple(int(x) for x in v) for v in c["vertices"]])
                     for c in data["cells"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad decomposition payload: {exc}") from exc
        window = None
        if "window" in data:
            window = [tuple(int(x) for x in p) for p in data["window"]]
        # walls are recomputed rather than trusted: the file records only
        # their combinatorial signature
        return cls(dim, fiber, cells, walls=None, window=window)


def compute_walls(decomp) -> list:
    """Enumerate all shared faces between class representatives and translates.

    Works for any face-fitting input; raises NotFaceFitting when a nonempty
    intersection of two cells is not a common face.
    """
    cells = decomp.cells
    walls = []
    seen = set()
    zero = (0,) * decomp.base_dim
    for i in range(len(cells)):
        pts_i = set(cells[i].lattice_points())
        for j in range(i, len(cells)):
            pts_j = frozenset(cells[j].lattice_points())
            cand = set()
            for p in pts_i:
                for qpt in pts_j:
                    cand.add(tuple(a - b for a, b in zip(p, qpt)))
            for t in sorted(cand):
                if i == j:
                    if t <= zero:
                        continue
                shared = sorted(
                    p for p in pts_i
                    if tuple(a - b for a, b in zip(p, t)) in pts_j
                )
                if not shared:
                    continue
                key = (i, j, t)
                if key in seen:
                    continue
                seen.add(key)
                n = len(shared)
                bary = [Fraction(sum(p[d] for p in shared), n)
                        for d in range(decomp.base_dim)]
                face_i = cells[i].minimal_face_lattice_points(bary)
                bary_j = [b - x for b, x in zip(bary, t)]
                face_j = cells[j].minimal_face_lattice_points(bary_j)
                if face_i is None or face_j is None:
                    raise NotFaceFitting(
                        f"cells {i} and {j}+{t} meet outside their faces"
                    )
                face_j_shifted = tuple(sorted(tuple(x + y for x, y in zip(p, t))
                                              for p in face_j))
                if face_i != tuple(shared) or face_j_shifted != tuple(shared):
                    raise NotFaceFitting(
                        f"intersection of cells {i} and {j}+{t} is not a common face"
                    )
                dim = convex_hull(shared).affine_dim
                walls.append(Wall(i, j, t, shared, dim))
    return walls
