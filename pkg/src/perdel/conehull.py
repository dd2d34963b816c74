"""Incremental facet enumeration for pointed rational cones.

This is the single exact-geometry engine behind the package.  Two callers
use it:

* polytope hulls: a polytope in Z^g is the slice h = 1 of the cone over the
  homogenized rays (1, x);
* Delaunay stars: the cells incident to the origin for a form q are the
  facets of the cone over the lifted rays (x, q(x)).

Rays are integer vectors and every predicate is an exact integer sign, so
coplanarities are decided exactly and co-spherical cells come out merged
instead of arbitrarily triangulated.

The algorithm is beneath-beyond with conflict lists on a simplicial
(internally triangulated) boundary; facets are merged by their primitive
oriented normal at the end, which is sound for cones because a supporting
hyperplane through the apex determines its facet.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import row_echelon_ints

_INT64_SAFE = 2**62


def _primitive(ints):
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def ray_normal(rays_subset, orient_against):
    """Primitive integer normal of the hyperplane spanned by D-1 rays.

    The sign is fixed so the witness vector lands strictly on the positive
    side.  Raises if the subset does not span a hyperplane or the witness
    lies on it.
    """
    D = len(orient_against)
    ech, pivots = row_echelon_ints([list(r) for r in rays_subset], D)
    free = [c for c in range(D) if c not in pivots]
    if len(free) != 1:
        raise ValueError("ray subset does not span a hyperplane")
    # integer back-substitution: rescale the partial vector as needed
    x = [0] * D
    x[free[0]] = 1
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        row = ech[r]
        s = 0
        for c in range(pc + 1, D):
            if x[c]:
                s += row[c] * x[c]
        p = row[pc]
        g = math.gcd(s, p)
        f = p // g
        if f != 1:
            for c in range(D):
                if x[c]:
                    x[c] *= f
        x[pc] = -(s // g)
    n = _primitive(x)
    s = sum(a * b for a, b in zip(n, orient_against))
    if s == 0:
        raise ValueError("orientation witness lies on the hyperplane")
    if s < 0:
        n = [-v for v in n]
    return tuple(n)


def _greedy_independent(rays, order, dim):
    """Indices of the first `dim` linearly independent rays in `order`."""
    echelon = []  # list of (pivot_col, integer row)
    chosen = []
    for idx in order:
        row = list(rays[idx])
        for pc, er in echelon:
            if row[pc] != 0:
                a, b = er[pc], row[pc]
                row = [a * x - b * y for x, y in zip(row, er)]
        row = _primitive(row)
        pivot = next((c for c, v in enumerate(row) if v != 0), None)
        if pivot is None:
            continue
        echelon.append((pivot, row))
        echelon.sort(key=lambda t: t[0])
        chosen.append(idx)
        if len(chosen) == dim:
            return chosen
    return None


class _Facet:
    __slots__ = ("verts", "normal", "conflicts", "alive")

    def __init__(self, verts, normal):
        self.verts = verts          # sorted tuple of ray indices, D-1 of them
        self.normal = normal        # tuple of ints, oriented inward
        self.conflicts = set()      # unprocessed rays strictly below
        self.alive = True


def _dot(n, r):
    s = 0
    for a, b in zip(n, r):
        s += a * b
    return s


class ConeHull:
    """Facet description of cone(rays) for a pointed full-dimensional cone.

    Attributes
    ----------
    facets : list of (normal, tight)
        Primitive inward integer normal, and the sorted tuple of indices of
        *all* input rays lying on the facet.  Sorted canonically.
    extreme : list of int
        Indices of rays that are extreme (span one-dimensional faces).
    """

    def __init__(self, rays, insertion_order=None, check=True):
        self.rays = [tuple(int(v) for v in r) for r in rays]
        if not self.rays:
            raise ValueError("empty ray set")
        self.dim = len(self.rays[0])
        order = list(insertion_order) if insertion_order is not None else list(range(len(self.rays)))
        base = _greedy_independent(self.rays, order, self.dim)
        if base is None:
            raise ValueError("rays do not span the ambient space")
        self.witness = tuple(sum(self.rays[i][d] for i in base) for d in range(self.dim))
        self._build(order, base)
        self._merge(check=check)

    # -- incremental construction ------------------------------------------

    def _build(self, order, base):
        D = self.dim
        rays = self.rays
        facets = {}
        next_id = 0
        ridge_map = {}
        ray_facets = {i: set() for i in range(len(rays))}
        processed = set(base)

        maxray = max(max(abs(v) for v in r) for r in rays)
        rays_np = np.array(rays, dtype=np.int64) if maxray < 2**31 else None

        def conflict_filter(normal, candidates):
            if rays_np is not None and len(candidates) > 48:
                maxn = max(abs(v) for v in normal)
                if maxn * maxray * D < _INT64_SAFE:
                    idx = np.fromiter(candidates, dtype=np.int64, count=len(candidates))
                    dots = rays_np[idx] @ np.array(normal, dtype=np.int64)
                    return set(idx[dots < 0].tolist())
            return {c for c in candidates if _dot(normal, rays[c]) < 0}

        def add_facet(verts, normal, conflicts):
            nonlocal next_id
            f = _Facet(verts, normal)
            f.conflicts = conflicts
            fid = next_id
            next_id += 1
            facets[fid] = f
            for k in range(len(verts)):
                ridge = verts[:k] + verts[k + 1:]
                ridge_map.setdefault(ridge, []).append(fid)
            for c in conflicts:
                ray_facets[c].add(fid)
            return fid

        def drop_facet(fid):
            f = facets.pop(fid)
            f.alive = False
            verts = f.verts
            for k in range(len(verts)):
                ridge = verts[:k] + verts[k + 1:]
                lst = ridge_map.get(ridge)
                lst.remove(fid)
                if not lst:
                    del ridge_map[ridge]
            for c in f.conflicts:
                ray_facets[c].discard(fid)

        # initial simplicial cone on the independent base rays
        unprocessed = [i for i in order if i not in processed]
        for k in base:
            verts = tuple(sorted(i for i in base if i != k))
            normal = ray_normal([rays[i] for i in verts], rays[k])
            add_facet(verts, normal, conflict_filter(normal, unprocessed))

        for idx in unprocessed:
            processed.add(idx)
            visible = list(ray_facets[idx])
            for fid in visible:
                facets[fid].conflicts.discard(idx)
            ray_facets[idx] = set()
            if not visible:
                continue
            visible_set = set(visible)
            horizon = []
            for fid in visible:
                verts = facets[fid].verts
                for k in range(len(verts)):
                    ridge = verts[:k] + verts[k + 1:]
                    for other in ridge_map[ridge]:
                        if other != fid and other not in visible_set:
                            horizon.append((ridge, fid, other))
            new_ids = []
            for ridge, fvis, fkeep in horizon:
                verts = tuple(sorted(ridge + (idx,)))
                normal = ray_normal([rays[i] for i in verts], self.witness)
                candidates = facets[fkeep].conflicts | facets[fvis].conflicts
                new_ids.append(add_facet(verts, normal, conflict_filter(normal, candidates)))
            for fid in visible:
                drop_facet(fid)
        self._simplicial = facets

    # -- merge and certify ---------------------------------------------------

    def _merge(self, check=True):
        normals = sorted({f.normal for f in self._simplicial.values()})
        maxray = max(max(abs(v) for v in r) for r in self.rays)
        rays_np = np.array(self.rays, dtype=np.int64) if maxray < 2**31 else None
        facets = []
        for n in normals:
            maxn = max(abs(v) for v in n)
            if rays_np is not None and maxn * maxray * self.dim < _INT64_SAFE:
                dots = rays_np @ np.array(n, dtype=np.int64)
                if check and bool((dots < 0).any()):
                    raise AssertionError("hull certification failed: ray below facet")
                tight = tuple(int(i) for i in np.nonzero(dots == 0)[0])
            else:
                dots = [_dot(n, r) for r in self.rays]
                if check and any(d < 0 for d in dots):
                    raise AssertionError("hull certification failed: ray below facet")
                tight = tuple(i for i, d in enumerate(dots) if d == 0)
            facets.append((n, tight))
        self.facets = facets
        self.extreme = self._extreme_rays()

    def _extreme_rays(self):
        incident = {}
        for n, tight in self.facets:
            for i in tight:
                incident.setdefault(i, []).append(n)
        extreme = []
        for i, nlist in sorted(incident.items()):
            if _rank_int(nlist) == self.dim - 1:
                extreme.append(i)
        return extreme


def _rank_int(int_rows):
    echelon = []
    rank = 0
    for row in int_rows:
        row = list(row)
        for pc, er in echelon:
            if row[pc] != 0:
                a, b = er[pc], row[pc]
                row = [a * x - b * y for x, y in zip(row, er)]
        row = _primitive(row)
        pivot = next((c for c, v in enumerate(row) if v != 0), None)
        if pivot is None:
            continue
        echelon.append((pivot, row))
        echelon.sort(key=lambda t: t[0])
        rank += 1
    return rank
