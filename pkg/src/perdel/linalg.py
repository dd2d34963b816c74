"""Exact rational matrices and the fraction-free elimination kernel.

All dimension counts in the package (ranks, kernels, inertia of quadratic
forms) reduce to exact elimination over the rationals.  Rows are scaled to
integers and eliminated with the Bareiss fraction-free scheme so intermediate
entries stay integral and of bounded size; no floating point is involved
anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NonSymmetric
from .rationals import frac


def _int_rows(rows):
    """Scale each rational row to a primitive integer row (content removed)."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


class Matrix:
    """Immutable dense matrix of exact rationals.

    Equality is entrywise exact equality.  Construction accepts ints,
    Fractions or "p/q" strings.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = [[frac(x) for x in row] for row in entries]
        if entries:
            width = len(entries[0])
            if any(len(row) != width for row in entries):
                raise ValueError("ragged rows in matrix literal")
        else:
            width = 0 if cols is None else cols
        self.rows = len(entries)
        self.cols = width
        self.entries = entries

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls([[Fraction(0)] * cols for _ in range(rows)], cols=cols)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.entries)))

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def row(self, i):
        return list(self.entries[i])

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self):
        return Matrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
                      cols=self.rows)

    def mul_vec(self, vec):
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((row[j] * vec[j] for j in range(self.cols)), Fraction(0))
                for row in self.entries]

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = other.transpose()
        return Matrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in ot.entries]
             for row in self.entries],
            cols=other.cols,
        )

    def is_symmetric(self):
        if self.rows != self.cols:
            return False
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )


def row_echelon_ints(int_rows, ncols):
    """Bareiss fraction-free echelon form of integer rows.

    Returns (echelon_rows, pivot_cols).  The input list is not modified.
    """
    m = [list(r) for r in int_rows]
    nrows = len(m)
    pivot_cols = []
    piv_r = 0
    prev_pivot = 1
    for piv_c in range(ncols):
        sel = None
        for i in range(piv_r, nrows):
            if m[i][piv_c] != 0:
                sel = i
                break
        if sel is None:
            continue
        if sel != piv_r:
            m[piv_r], m[sel] = m[sel], m[piv_r]
        p = m[piv_r][piv_c]
        for r in range(piv_r + 1, nrows):
            v = m[r][piv_c]
            row = m[r]
            top = m[piv_r]
            for c in range(piv_c, ncols):
                row[c] = (p * row[c] - v * top[c]) // prev_pivot
        prev_pivot = p
        pivot_cols.append(piv_c)
        piv_r += 1
        if piv_r == nrows:
            break
    return m[:piv_r], pivot_cols


def rank(matrix) -> int:
    """Exact rank over the rationals."""
    rows = matrix.entries if isinstance(matrix, Matrix) else [[frac(x) for x in r] for r in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    _, pivots = row_echelon_ints(_int_rows(rows), ncols)
    return len(pivots)


def kernel_basis(matrix) -> Matrix:
    """Basis of the right null space, returned as matrix columns.

    rank(m) + (number of returned columns) == cols(m).
    """
    if isinstance(matrix, Matrix):
        rows, ncols = matrix.entries, matrix.cols
    else:
        rows = [[frac(x) for x in r] for r in matrix]
        ncols = len(rows[0]) if rows else 0
    ech, pivots = row_echelon_ints(_int_rows(rows), ncols) if rows else ([], [])
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        # back-substitute through the echelon rows
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((frac(ech[r][c]) * vec[c] for c in range(pc + 1, ncols)), Fraction(0))
            vec[pc] = -s / ech[r][pc]
        basis.append(vec)
    return Matrix([[basis[k][i] for k in range(len(basis))] for i in range(ncols)],
                  cols=len(basis))


def solve(matrix, rhs):
    """One exact solution x of matrix * x = rhs, or None if inconsistent."""
    if isinstance(matrix, Matrix):
        rows, ncols = matrix.entries, matrix.cols
    else:
        rows = [[frac(x) for x in r] for r in matrix]
        ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [frac(b)] for r, b in zip(rows, rhs)]
    ech, pivots = row_echelon_ints(_int_rows(aug), ncols + 1) if aug else ([], [])
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        s = frac(ech[r][ncols]) - sum(
            (frac(ech[r][c]) * x[c] for c in range(pc + 1, ncols)), Fraction(0)
        )
        x[pc] = s / ech[r][pc]
    return x


def invert(matrix) -> Matrix:
    """Exact inverse of a square rational matrix (raises on singular)."""
    m = matrix if isinstance(matrix, Matrix) else Matrix(matrix)
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [[m.entries[i][j] for j in range(n)] +
           [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i in range(n)]
    # plain rational Gauss-Jordan; n stays small wherever this is used
    for k in range(n):
        sel = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if sel is None:
            raise ValueError("matrix is singular")
        if sel != k:
            aug[k], aug[sel] = aug[sel], aug[k]
        p = aug[k][k]
        if p != 1:
            aug[k] = [x / p for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return Matrix([row[n:] for row in aug])


POSITIVE_DEFINITE = "positive_definite"
POSITIVE_SEMIDEFINITE = "positive_semidefinite_with_kernel"
INDEFINITE = "indefinite"


class Signature:
    """Outcome of the exact LDL^T classification of a symmetric form."""

    __slots__ = ("kind", "kernel")

    def __init__(self, kind, kernel=None):
        self.kind = kind
        self.kernel = kernel

    def __repr__(self):
        return f"Signature({self.kind})"

    @property
    def is_positive_definite(self):
        return self.kind == POSITIVE_DEFINITE


def ldlt_signature(matrix) -> Signature:
    """Classify a symmetric rational matrix by fraction-free LDL^T.

    Symmetric (diagonal) pivoting is used.  Positive semidefinite inputs
    come back with an exact rational kernel basis; any negative pivot, or a
    zero diagonal facing a nonzero off-diagonal entry, certifies
    indefiniteness.
    """
    m = matrix if isinstance(matrix, Matrix) else Matrix(matrix)
    if not m.is_symmetric():
        raise NonSymmetric("ldlt_signature requires a symmetric matrix")
    n = m.rows
    a = [[m.entries[i][j] for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rank_count = 0
    for k in range(n):
        # symmetric pivot: bring a positive diagonal entry to position k
        sel = None
        for i in range(k, n):
            if a[i][i] > 0:
                sel = i
                break
        if sel is None:
            # all remaining diagonal entries are <= 0
            for i in range(k, n):
                if a[i][i] < 0:
                    return Signature(INDEFINITE)
            # zero diagonal block: any off-diagonal residue => indefinite
            for i in range(k, n):
                for j in range(k, n):
                    if a[i][j] != 0:
                        return Signature(INDEFINITE)
            break
        if sel != k:
            a[k], a[sel] = a[sel], a[k]
            for row in a:
                row[k], row[sel] = row[sel], row[k]
            perm[k], perm[sel] = perm[sel], perm[k]
        p = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f == 0:
                continue
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
        rank_count += 1
    if rank_count == n:
        return Signature(POSITIVE_DEFINITE)
    # semidefinite: kernel of the original matrix, exact
    ker = kernel_basis(m)
    return Signature(POSITIVE_SEMIDEFINITE, kernel=ker)
