"""SVG rendering of two-dimensional periodic decompositions.

Draws the cell classes of a g=2 decomposition over a 3x3 block of
fundamental-domain translates, in lattice coordinates (so the picture is
the affine combinatorial tiling; the metric of the generating form is not
applied).  Output is deterministic byte-for-byte.
"""

from __future__ import annotations

from fractions import Fraction

_PALETTE = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759",
            "#b07aa1", "#76b7b2", "#edc948", "#9c755f"]

_SCALE = 60


def _coord(x):
    v = Fraction(x) * _SCALE
    if v.denominator == 1:
        return str(v.numerator)
    return f"{float(v):.3f}"


def _ccw_vertices(cell):
    cx = Fraction(sum(v[0] for v in cell.vertices), len(cell.vertices))
    cy = Fraction(sum(v[1] for v in cell.vertices), len(cell.vertices))

    def half(v):
        dx, dy = Fraction(v[0]) - cx, Fraction(v[1]) - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cross(a, b):
        ax, ay = Fraction(a[0]) - cx, Fraction(a[1]) - cy
        bx, by = Fraction(b[0]) - cx, Fraction(b[1]) - cy
        return ax * by - ay * bx

    import functools

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        c = cross(a, b)
        return 0 if c == 0 else (-1 if c > 0 else 1)

    return sorted(cell.vertices, key=functools.cmp_to_key(cmp))


def render_decomposition(decomp) -> str:
    """SVG drawing of the decomposition tiled over 3x3 translates."""
    if decomp.ambient_dim != 2 or decomp.fiber_rank != 0:
        raise ValueError("SVG rendering is limited to polytopal g=2 decompositions")
    polygons = []
    for idx, cell in enumerate(decomp.cells):
        color = _PALETTE[idx % len(_PALETTE)]
        ring = _ccw_vertices(cell)
        for tx in range(3):
            for ty in range(3):
                pts = " ".join(
                    f"{_coord(v[0] + tx)},{_coord(-(v[1] + ty))}" for v in ring
                )
                polygons.append(
                    f'<polygon points="{pts}" fill="{color}" fill-opacity="0.55" '
                    f'stroke="#222" stroke-width="1"/>'
                )
    lo = min(min(v[0], v[1]) for c in decomp.cells for v in c.vertices)
    hi = max(max(v[0], v[1]) for c in decomp.cells for v in c.vertices)
    x0 = (lo - 1) * _SCALE
    y0 = -(hi + 3) * _SCALE
    size = (hi - lo + 4) * _SCALE
    header = (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{x0} {y0} {size} {size}">'
    )
    return header + "".join(polygons) + "</svg>\n"
