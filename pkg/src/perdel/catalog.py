"""Built-in Gram matrices, the 9-hyperplane dicing, and its refinements.

The registry covers the standard lattices the rest of the package exercises
(Z^g, D_n, E_8, A_2), the 4-dimensional maximal dicing obtained as the
Delaunay decomposition of the K_{3,3} graphic form, and the four
refinements obtained by triangulating its two 6-vertex cells, which are
the test bed for the dimension-4 non-Delaunay classification.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .decomposition import PeriodicDecomposition, canonical_class_key
from .delaunay import delaunay_decomposition
from .errors import PerdelError, UnknownName
from .graphs import complete_bipartite, graphic_form
from .linalg import Matrix, kernel_basis, ldlt_signature
from .polytope import convex_hull

_E8_ADJACENCY = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def gram(name, n=None) -> Matrix:
    """Gram matrix of a named lattice, positive definite by construction.

    Zg: identity; Dn: basis {e1+e2, e2-e1, e3-e2, ..., en-e(n-1)} of the
    even-coordinate-sum sublattice of Z^n; E8: the root-basis Gram (even,
    unimodular, diagonal 2); A2: [[2,1],[1,2]].
    """
    if name == "Zg":
        if n is None or n < 1:
            raise UnknownName("Zg requires a dimension n >= 1")
        return Matrix.identity(n)
    if name == "A2":
        return Matrix([[2, 1], [1, 2]])
    if name == "Dn":
        if n is None or n < 3:
            raise UnknownName("Dn is defined for n >= 3")
        basis = [[0] * n for _ in range(n)]
        basis[0][0], basis[0][1] = 1, 1
        basis[1][0], basis[1][1] = -1, 1
        for i in range(2, n):
            basis[i][i - 1], basis[i][i] = -1, 1
        q = Matrix([[sum(basis[i][k] * basis[j][k] for k in range(n))
                     for j in range(n)] for i in range(n)])
        return q
    if name == "E8":
        if n not in (None, 8):
            raise UnknownName("E8 is eight-dimensional")
        m = [[0] * 8 for _ in range(8)]
        for i in range(8):
            m[i][i] = 2
        for a, b in _E8_ADJACENCY:
            m[a - 1][b - 1] = m[b - 1][a - 1] = -1
        return Matrix(m)
    raise UnknownName(f"no catalog entry named {name!r}")


def registry():
    return {
        "Zg": "identity form on Z^g (parameter: dimension)",
        "Dn": "checkerboard lattice D_n, n >= 3",
        "E8": "even unimodular E8 root lattice",
        "A2": "hexagonal lattice",
    }


@lru_cache(maxsize=1)
def delta_rt() -> PeriodicDecomposition:
    """The maximal 4-dimensional dicing with 9 hyperplane classes.

    Constructed as Del of the K_{3,3} graphic form; every pinned structural
    fact is asserted hard before returning.
    """
    q = graphic_form(complete_bipartite(3, 3))
    decomp = delaunay_decomposition(q)
    counts = decomp.vertex_count_multiset()
    if len(decomp.cells) != 20 or counts != tuple([5] * 18 + [6, 6]):
        raise PerdelError("dicing construction mismatch: wrong cell inventory")
    six = [c for c in decomp.cells if len(c.vertices) == 6]
    for c in six:
        if c.affine_dim != 4 or len(c.inequalities) != 9:
            raise PerdelError("6-vertex cell is not a cyclic polytope candidate")
        if not c.is_simplicial_boundary():
            raise PerdelError("6-vertex cell must be simplicial")
        if not _is_neighborly(c):
            raise PerdelError("6-vertex cell must be neighborly")
    k0 = canonical_class_key(six[0].lattice_points())
    k1 = canonical_class_key(six[1].lattice_points())
    k0n = canonical_class_key([tuple(-x for x in p) for p in six[0].lattice_points()])
    if k0n != k1 or k0 == k1:
        raise PerdelError("the two 6-vertex classes must be exchanged by negation")
    if decomp.wall_hyperplane_class_count() != 9:
        raise PerdelError("dicing must have exactly 9 wall hyperplane classes")
    return decomp


def _is_neighborly(cell):
    for a, b in itertools.combinations(range(len(cell.vertices)), 2):
        va, vb = cell.vertices[a], cell.vertices[b]
        active = [(c0, cv) for c0, cv in cell.inequalities
                  if c0 + sum(c * x for c, x in zip(cv, va)) == 0
                  and c0 + sum(c * x for c, x in zip(cv, vb)) == 0]
        face = [v for v in cell.vertices
                if all(c0 + sum(c * x for c, x in zip(cv, v)) == 0
                       for c0, cv in active)]
        if sorted(face) != sorted((va, vb)):
            return False
    return True


def cell_triangulations(cell):
    """Both triangulations of a cell on dim+2 vertices (one circuit).

    Six points in dimension 4 carry a unique affine dependence; its
    positive and negative supports give the only two triangulations.
    """
    verts = list(cell.vertices)
    g = cell.ambient_dim
    rows = [[Fraction(v[d]) for v in verts] for d in range(g)]
    rows.append([Fraction(1)] * len(verts))
    ker = kernel_basis(Matrix(rows, cols=len(verts)))
    if ker.cols != 1:
        raise PerdelError("cell does not carry a unique affine dependence")
    lam = [ker.entries[i][0] for i in range(len(verts))]
    pos = [i for i, l in enumerate(lam) if l > 0]
    neg = [i for i, l in enumerate(lam) if l < 0]
    if 0 in (len(pos), len(neg)):
        raise PerdelError("degenerate dependence; point not in general position")
    tri_pos = [convex_hull([verts[j] for j in range(len(verts)) if j != i])
               for i in pos]
    tri_neg = [convex_hull([verts[j] for j in range(len(verts)) if j != i])
               for i in neg]
    return tri_pos, tri_neg


@lru_cache(maxsize=1)
def _rt_refinements_cached():
    base = delta_rt()
    simplices = [c for c in base.cells if len(c.vertices) == 5]
    six = [c for c in base.cells if len(c.vertices) == 6]
    tris = [cell_triangulations(c) for c in six]
    out = []
    for choice0 in (0, 1):
        for choice1 in (0, 1):
            cells = list(simplices) + list(tris[0][choice0]) + list(tris[1][choice1])
            ref = PeriodicDecomposition(
                base.ambient_dim, 0, cells,
                form=None, window=base.window,
            )
            ref.label = f"refine_C6a_{'+-'[choice0]}_C6b_{'+-'[choice1]}"
            out.append(ref)
    return tuple(out)


def rt_refinements():
    """The four refinements of the dicing (two triangulations per 6-cell)."""
    return list(_rt_refinements_cached())
