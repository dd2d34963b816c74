"""Finite-support moment map: weighted averages of lattice points.

Evaluates the torus-linearized moment map on a finite set of lattice
points with positive rational weights; the image is the weighted average
and always lies in the convex hull of the support.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import EmptySupport
from .rationals import frac


class WeightedSupport:
    """Finite map from lattice points to positive rational weights."""

    def __init__(self, entries):
        self.entries = {}
        for point, weight in dict(entries).items():
            w = frac(weight)
            if w <= 0:
                raise EmptySupport("weights must be positive")
            self.entries[tuple(int(x) for x in point)] = w
        if not self.entries:
            raise EmptySupport("support must be nonempty")
        dims = {len(p) for p in self.entries}
        if len(dims) != 1:
            raise EmptySupport("support points must share one dimension")
        self.dim = dims.pop()

    def __repr__(self):
        return f"WeightedSupport({len(self.entries)} points, dim {self.dim})"


def moment_point(support: WeightedSupport):
    """The weighted average sum(w_x * x) / sum(w_x), exact."""
    total = sum(support.entries.values(), Fraction(0))
    out = [Fraction(0)] * support.dim
    for point, weight in support.entries.items():
        for d in range(support.dim):
            out[d] += weight * point[d]
    return [x / total for x in out]
