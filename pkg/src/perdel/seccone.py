"""Secondary cones: Delaunay witnesses, Farkas certificates, stratum dims.

For a periodic decomposition D the secondary cone is the set of positive
definite forms q whose Delaunay decomposition is exactly D.  Its linear
span is cut out by the equality system "q admits an affine lift on every
cell's lattice points"; strict inequalities over a finite window separate
the open cone.  A strictly feasible point is validated by the definitive
round-trip check Del(witness) == D; infeasibility is certified by an exact
nonnegative Farkas combination of the window inequalities, which is sound
regardless of window size (more points only add constraints).

The equality solution space projects injectively to q-space (an affine
function vanishing on a spanning cell is zero), so its dimension is the
cone dimension whenever a witness exists.  The associated stratum of the
Voronoi compactification has dimension g(g+1)/2 minus the cone dimension;
that codimension is what the extra-component test compares against h0.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .delaunay import delaunay_decomposition, enumerate_window, quadratic_value
from .errors import NotFaceFitting, PerdelError, WindowUnstable
from .linalg import Matrix, kernel_basis, ldlt_signature
from .lp import strict_feasibility
from .rationals import frac
from .sheaf import h0_general


class ConeCertificate:
    """Outcome of the secondary-cone computation for one decomposition.

    Exactly one of `witness` / `farkas` is set.  `equality_solution_dim` is
    the dimension of the space of forms admitting per-cell affine lifts;
    when a witness exists this equals the cone dimension, and
    `voronoi_stratum_dim` = g(g+1)/2 - cone dimension is the dimension of
    the matching stratum of the Voronoi compactification.
    """

    def __init__(self, ambient_dim, equality_solution_dim, witness=None,
                 farkas=None, window=None):
        self.ambient_dim = ambient_dim
        self.equality_solution_dim = equality_solution_dim
        self.witness = witness
        self.farkas = farkas
        self.window = window

    @property
    def is_delaunay(self):
        return self.witness is not None

    @property
    def voronoi_stratum_dim(self):
        g = self.ambient_dim
        return g * (g + 1) // 2 - self.equality_solution_dim

    def __repr__(self):
        kind = "witness" if self.is_delaunay else "farkas"
        return (f"ConeCertificate(dim={self.equality_solution_dim}, {kind})")


def _q_row_coefficients(g, point):
    """Coefficients of q(point) in the upper-triangle entry variables."""
    coeffs = []
    for i in range(g):
        for j in range(i, g):
            if i == j:
                coeffs.append(Fraction(point[i] * point[i]))
            else:
                coeffs.append(Fraction(2 * point[i] * point[j]))
    return coeffs


def _equality_kernel(decomp):
    g = decomp.ambient_dim
    nq = g * (g + 1) // 2
    ncols = nq + (g + 1) * len(decomp.cells)
    rows = []
    for ci, cell in enumerate(decomp.cells):
        base = nq + (g + 1) * ci
        for p in cell.lattice_points():
            row = [Fraction(0)] * ncols
            row[:nq] = _q_row_coefficients(g, p)
            row[base] = Fraction(-1)
            for d in range(g):
                row[base + 1 + d] = Fraction(-p[d])
            rows.append(row)
    return kernel_basis(Matrix(rows, cols=ncols))


def _window_points(decomp, attempt):
    """Strict-inequality window: the build window if present, else a box."""
    if decomp.form is not None:
        from .delaunay import _integer_scaled
        qi, _ = _integer_scaled(decomp.form)
        base = 2 * max(qi.entries[i][i] for i in range(qi.rows))
        return enumerate_window(qi, base * (2 ** (attempt + 1)))
    if decomp.window is not None and attempt == 0:
        return list(decomp.window)
    m = 1
    for c in decomp.cells:
        for p in c.lattice_points():
            m = max(m, max(abs(x) for x in p))
    m = (m + 1) * (attempt + 1)
    g = decomp.ambient_dim
    import itertools
    return [p for p in itertools.product(range(-m, m + 1), repeat=g) if any(p)]


def secondary_cone(decomp) -> ConeCertificate:
    """Witness form or exact infeasibility certificate for a decomposition."""
    if decomp.fiber_rank != 0:
        raise NotFaceFitting("secondary cones are defined for polytopal decompositions")
    g = decomp.ambient_dim
    nq = g * (g + 1) // 2
    kernel = _equality_kernel(decomp)
    eq_dim = kernel.cols
    if eq_dim == 0:
        return ConeCertificate(g, 0, farkas=[])
    kcols = [[kernel.entries[i][j] for i in range(kernel.rows)]
             for j in range(kernel.cols)]

    for attempt in range(3):
        window = _window_points(decomp, attempt)
        rows = []
        labels = []
        for ci, cell in enumerate(decomp.cells):
            pts = frozenset(cell.lattice_points())
            base = nq + (g + 1) * ci
            for y in window:
                if tuple(y) in pts:
                    continue
                qc = _q_row_coefficients(g, y)
                reduced = []
                for col in kcols:
                    s = sum((qc[t] * col[t] for t in range(nq) if qc[t]), Fraction(0))
                    s -= col[base]
                    for d in range(g):
                        if y[d]:
                            s -= y[d] * col[base + 1 + d]
                    reduced.append(s)
                rows.append(reduced)
                labels.append((ci, tuple(y)))
        result = strict_feasibility(rows)
        if not result.feasible:
            farkas = [(labels[i][0], labels[i][1], c)
                      for i, c in enumerate(result.farkas) if c != 0]
            return ConeCertificate(g, eq_dim, farkas=farkas, window=window)
        qvec = [sum((Fraction(result.u[j]) * kcols[j][t] for j in range(eq_dim)),
                    Fraction(0)) for t in range(nq)]
        qmat = _q_from_upper(g, qvec)
        if not ldlt_signature(qmat).is_positive_definite:
            continue
        witness = _integerize(qmat)
        try:
            rebuilt = delaunay_decomposition(witness)
        except PerdelError:
            continue
        if rebuilt.canonical_key() == decomp.canonical_key():
            return ConeCertificate(g, eq_dim, witness=witness, window=window)
    raise WindowUnstable(
        "strictly feasible forms kept failing the Delaunay round-trip"
    )


def _q_from_upper(g, qvec):
    entries = [[Fraction(0)] * g for _ in range(g)]
    t = 0
    for i in range(g):
        for j in range(i, g):
            entries[i][j] = qvec[t]
            entries[j][i] = qvec[t]
            t += 1
    return Matrix(entries)


def _integerize(qmat):
    den = 1
    for row in qmat.entries:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [[int(x * den) for x in row] for row in qmat.entries]
    g = 0
    for row in ints:
        for v in row:
            g = math.gcd(g, abs(v))
    if g > 1:
        ints = [[v // g for v in row] for row in ints]
    return Matrix(ints)


def et_detect(decomp):
    """Stratum report with the extra-component flag filled in.

    The flag is set when the section-space dimension exceeds the dimension
    of the corresponding stratum of the Voronoi compactification.
    """
    cert = secondary_cone(decomp)
    if not cert.is_delaunay:
        raise NotFaceFitting(
            "extra-component test requires a Delaunay decomposition (witness exists)"
        )
    report = h0_general(decomp)
    report.voronoi_cone_dim = cert.voronoi_stratum_dim
    report.et_flag = report.h0 > cert.voronoi_stratum_dim
    return report
