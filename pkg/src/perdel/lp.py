"""Exact strict-feasibility LP with Farkas certificates.

The one question this module answers: given rational row functionals
r_1..r_m on Q^k, is there u with r_i(u) >= 1 for all i (equivalently, by
homogeneity of the rows, r_i(u) > 0 for all i)?  The answer is certified
either way:

* feasible: an explicit rational u with every r_i(u) >= 1;
* infeasible: lambda >= 0 with sum lambda_i r_i = 0 and sum lambda_i = 1,
  which makes r_i(u) > 0 for all i impossible.

The workhorse is a revised simplex on the dual-side standard form

    min mu   s.t.  A^T lambda = 0,  1^T lambda + mu = 1,  lambda, mu >= 0.

Its optimum is 0 exactly in the infeasible case and the optimal lambda is
the certificate; otherwise the simplex multipliers of an optimal basis free
of artificial variables yield u.  Artificials carry a symbolic big-M cost
(exact lexicographic cost pairs).  Entering columns are *ordered* by a
float screen for speed, but every acceptance, every ratio and the final
optimality conclusion are decided in exact rational arithmetic; after a
stall the rule degrades to pure Bland, which guarantees termination.  Both
outcomes are re-verified against the original rows before returning.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .linalg import Matrix, invert
from .rationals import frac

_ZERO = Fraction(0)
_ONE = Fraction(1)
_STALL_LIMIT = 40


class LPResult:
    __slots__ = ("feasible", "u", "farkas")

    def __init__(self, feasible, u=None, farkas=None):
        self.feasible = feasible
        self.u = u
        self.farkas = farkas

    def __repr__(self):
        return f"LPResult(feasible={self.feasible})"


def _primitive_int_row(row):
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def strict_feasibility(rows) -> LPResult:
    """Decide whether some u satisfies row . u >= 1 for every row."""
    rows = [[frac(x) for x in r] for r in rows]
    m = len(rows)
    if m == 0:
        return LPResult(True, u=[])
    k = len(rows[0])
    scaled = [_primitive_int_row(r) for r in rows]
    for i, r in enumerate(scaled):
        if all(v == 0 for v in r):
            lam = [_ZERO] * m
            lam[i] = _ONE
            return LPResult(False, farkas=lam)
    unique = {}
    for i, r in enumerate(scaled):
        if tuple(r) not in unique:
            nz = next(j for j, v in enumerate(r) if v != 0)
            alpha = rows[i][nz] / r[nz]  # original = alpha * primitive, alpha > 0
            unique[tuple(r)] = (i, alpha)
    reps = sorted(unique.items())

    # restrict u to the span of the rows so the equality block has full rank
    basis_rows = []
    echelon = []
    for t, _ in reps:
        row = list(t)
        for pc, er in echelon:
            if row[pc] != 0:
                a, b = er[pc], row[pc]
                row = [a * x - b * y for x, y in zip(row, er)]
        pivot = next((c for c, v in enumerate(row) if v != 0), None)
        if pivot is None:
            continue
        echelon.append((pivot, row))
        echelon.sort(key=lambda q: q[0])
        basis_rows.append(list(t))
    r_dim = len(basis_rows)
    amat = [[sum(t[j] * b[j] for j in range(k)) for b in basis_rows] for t, _ in reps]

    solver = _DualSimplex(amat, r_dim)
    feasible, w, lam_reduced = solver.run()
    if feasible:
        u = [sum((w[i] * Fraction(basis_rows[i][j]) for i in range(r_dim)), _ZERO)
             for j in range(k)]
        # the witness certifies the primitive-scaled rows; rescale so the
        # original rows (homogeneous system) clear 1 as well
        vals = [sum((c * x for c, x in zip(r, u)), _ZERO) for r in rows]
        low = min(vals)
        if low <= 0:
            raise AssertionError("LP witness fails verification")
        if low < 1:
            u = [x / low for x in u]
        return LPResult(True, u=u)
    lam = [_ZERO] * m
    for (t, (orig, alpha)), coeff in zip(reps, lam_reduced):
        lam[orig] = coeff / alpha
    total = sum(lam)
    if total <= 0 or any(c < 0 for c in lam):
        raise AssertionError("invalid Farkas multipliers")
    lam = [c / total for c in lam]
    for j in range(k):
        if sum((lam[i] * rows[i][j] for i in range(m)), _ZERO) != 0:
            raise AssertionError("Farkas combination does not vanish")
    return LPResult(False, farkas=lam)


class _DualSimplex:
    """min mu over { A^T lambda = 0, sum lambda + mu = 1, lambda, mu >= 0 }.

    Columns 0..m-1 are the lambda variables (integer entries), column m is
    mu, columns m+1.. are artificials seeding the basis.
    """

    def __init__(self, amat, r_dim):
        self.amat = amat
        self.m = len(amat)
        self.r = r_dim
        self.nrows = r_dim + 1
        self.mu_col = self.m
        self.f = [_ZERO] * r_dim + [_ONE]
        # float copy of the lambda columns for pricing order only
        self.afloat = np.array(
            [[float(v) for v in row] + [1.0] for row in amat], dtype=np.float64
        )

    def column(self, j):
        if j < self.m:
            return [Fraction(v) for v in self.amat[j]] + [_ONE]
        if j == self.mu_col:
            col = [_ZERO] * self.nrows
            col[-1] = _ONE
            return col
        col = [_ZERO] * self.nrows
        col[j - self.m - 1] = _ONE
        return col

    def cost_pair(self, j):
        if j < self.m:
            return (_ZERO, _ZERO)
        if j == self.mu_col:
            return (_ZERO, _ONE)
        return (_ONE, _ZERO)

    def run(self):
        basis = [self.m + 1 + i for i in range(self.r)] + [self.mu_col]
        binv = self._invert_basis(basis)
        basis, binv = self._optimize(basis, binv)
        x_b = self._solution(binv)
        mu_val = _ZERO
        for i, j in enumerate(basis):
            if j == self.mu_col:
                mu_val = x_b[i]
            elif j > self.mu_col and x_b[i] != 0:
                raise AssertionError("artificial variable stuck positive")
        if mu_val == 0:
            lam = [_ZERO] * self.m
            for i, j in enumerate(basis):
                if j < self.m:
                    lam[j] = x_b[i]
            return False, None, lam
        basis, binv = self._evict_artificials(basis, binv)
        basis, binv = self._optimize(basis, binv)
        y = self._multipliers(basis, binv, layer=1)
        y_last = y[-1]
        if y_last <= 0:
            raise AssertionError("dual multiplier inconsistent with positive optimum")
        w = [-y[i] / y_last for i in range(self.r)]
        return True, w, None

    # -- exact basis state ----------------------------------------------------

    def _invert_basis(self, basis):
        bmat = Matrix([[self.column(j)[i] for j in basis] for i in range(self.nrows)])
        return [list(row) for row in invert(bmat).entries]

    def _solution(self, binv):
        return [row[-1] for row in binv]  # B^-1 f with f = e_last

    def _multipliers(self, basis, binv, layer):
        y = [_ZERO] * self.nrows
        for i, j in enumerate(basis):
            c = self.cost_pair(j)[layer]
            if c != 0:
                row = binv[i]
                for t in range(self.nrows):
                    if row[t] != 0:
                        y[t] += c * row[t]
        return y

    def _reduced_exact(self, j, y_m, y_1):
        col = self.column(j)
        red_m = self.cost_pair(j)[0] - sum(
            (y_m[i] * col[i] for i in range(self.nrows) if col[i]), _ZERO)
        red_1 = self.cost_pair(j)[1] - sum(
            (y_1[i] * col[i] for i in range(self.nrows) if col[i]), _ZERO)
        return red_m, red_1

    def _pivot(self, binv, d, leave):
        piv = d[leave]
        row_l = [x / piv for x in binv[leave]]
        binv[leave] = row_l
        for i in range(self.nrows):
            if i != leave and d[i] != 0:
                di = d[i]
                row_i = binv[i]
                binv[i] = [a - di * b for a, b in zip(row_i, row_l)]

    def _optimize(self, basis, binv):
        stall = 0
        last_obj = None
        iters = 0
        limit = 100000 + 80 * (self.m + self.nrows)
        while True:
            iters += 1
            if iters > limit:
                raise AssertionError("simplex iteration limit exceeded")
            x_b = self._solution(binv)
            obj = sum((x_b[i] for i, j in enumerate(basis) if j == self.mu_col),
                      _ZERO)
            if last_obj is not None and obj == last_obj:
                stall += 1
            else:
                stall = 0
            last_obj = obj
            y_m = self._multipliers(basis, binv, 0)
            y_1 = self._multipliers(basis, binv, 1)
            basis_set = set(basis)
            entering = None
            if stall <= _STALL_LIMIT:
                entering = self._enter_screened(basis_set, y_m, y_1)
            if entering is None:
                entering = self._enter_bland(basis_set, y_m, y_1)
                if entering is None:
                    return basis, binv
            col = self.column(entering)
            d = [sum((binv[i][t] * col[t] for t in range(self.nrows) if col[t]),
                     _ZERO) for i in range(self.nrows)]
            leave = None
            best = None
            for i in range(self.nrows):
                if d[i] > 0:
                    key = (x_b[i] / d[i], basis[i])
                    if best is None or key < best:
                        best = key
                        leave = i
            if leave is None:
                raise AssertionError("feasibility LP cannot be unbounded")
            self._pivot(binv, d, leave)
            basis[leave] = entering

    def _enter_screened(self, basis_set, y_m, y_1):
        """Float-ordered candidates, each verified exactly before acceptance."""
        ym_f = np.array([float(v) for v in y_m])
        y1_f = np.array([float(v) for v in y_1])
        has_m = any(v != 0 for v in y_m)
        scores = -(self.afloat @ (ym_f * 1e9 + y1_f)) if has_m \
            else -(self.afloat @ y1_f)
        order = np.argsort(scores)
        checked = 0
        for j in order:
            if scores[j] > 1e-9:
                break
            j = int(j)
            if j in basis_set:
                continue
            red_m, red_1 = self._reduced_exact(j, y_m, y_1)
            if (red_m, red_1) < (_ZERO, _ZERO):
                return j
            checked += 1
            if checked >= 24:
                break
        # the mu column is not in afloat; test it exactly
        if self.mu_col not in basis_set:
            red_m, red_1 = self._reduced_exact(self.mu_col, y_m, y_1)
            if (red_m, red_1) < (_ZERO, _ZERO):
                return self.mu_col
        return None

    def _enter_bland(self, basis_set, y_m, y_1):
        for j in range(self.m + 1):  # artificials never re-enter
            if j in basis_set:
                continue
            red_m, red_1 = self._reduced_exact(j, y_m, y_1)
            if (red_m, red_1) < (_ZERO, _ZERO):
                return j
        return None

    def _evict_artificials(self, basis, binv):
        basis = list(basis)
        for i in range(self.nrows):
            if basis[i] <= self.mu_col:
                continue
            done = False
            for j in range(self.m + 1):
                if j in basis:
                    continue
                col = self.column(j)
                d_i = sum((binv[i][t] * col[t]
                           for t in range(self.nrows) if col[t]), _ZERO)
                if d_i != 0:
                    d = [sum((binv[r][t] * col[t]
                              for t in range(self.nrows) if col[t]), _ZERO)
                         for r in range(self.nrows)]
                    self._pivot(binv, d, i)
                    basis[i] = j
                    done = True
                    break
            if not done:
                raise AssertionError("cannot evict artificial; equality block rank-deficient")
        return basis, binv
