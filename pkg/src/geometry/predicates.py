"""Adaptive-exact orientation and incircle predicates.

Each predicate first evaluates its determinant in floating point and accepts
the sign when it exceeds the forward error bound of that evaluation; otherwise
it recomputes the determinant exactly with rational arithmetic on the float
inputs (every float is a dyadic rational, so the result is exact).

Sign conventions:
    orient2d(a, b, c) > 0  ⇔  a, b, c counter-clockwise
    incircle(a, b, c, d) > 0  ⇔  d strictly inside the circle through the
        counter-clockwise triangle a, b, c
"""

from fractions import Fraction
from typing import Sequence

import numpy as np

_EPS = float(np.finfo(float).eps) / 2.0
_CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_ERRBOUND = (10.0 + 96.0 * _EPS) * _EPS

Coord = Sequence[float]


def _sign_of(value: Fraction) -> float:
    if value > 0:
        return max(float(value), 5e-324)
    if value < 0:
        return min(float(value), -5e-324)
    return 0.0


def orient2d(a: Coord, b: Coord, c: Coord) -> float:
    """Twice the signed area of triangle abc, with exact sign."""
    ax, ay, bx, by, cx, cy = float(a[0]), float(a[1]), float(b[0]), float(b[1]), float(c[0]), float(c[1])
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    detsum = abs(detleft) + abs(detright)
    if abs(det) > _CCW_ERRBOUND * detsum:
        return det
    return orient2d_exact(a, b, c)


def orient2d_exact(a: Coord, b: Coord, c: Coord) -> float:
    ax, ay = Fraction(float(a[0])), Fraction(float(a[1]))
    bx, by = Fraction(float(b[0])), Fraction(float(b[1]))
    cx, cy = Fraction(float(c[0])), Fraction(float(c[1]))
    return _sign_of((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def incircle(a: Coord, b: Coord, c: Coord, d: Coord) -> float:
    """Incircle determinant of d against the circle through a, b, c, with exact sign."""
    dx, dy = float(d[0]), float(d[1])
    adx, ady = float(a[0]) - dx, float(a[1]) - dy
    bdx, bdy = float(b[0]) - dx, float(b[1]) - dy
    cdx, cdy = float(c[0]) - dx, float(c[1]) - dy

    bdxcdy, cdxbdy = bdx * cdy, cdx * bdy
    cdxady, adxcdy = cdx * ady, adx * cdy
    adxbdy, bdxady = adx * bdy, bdx * ady
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy

    det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady)
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    if abs(det) > _ICC_ERRBOUND * permanent:
        return det
    return incircle_exact(a, b, c, d)


def incircle_exact(a: Coord, b: Coord, c: Coord, d: Coord) -> float:
    dx, dy = Fraction(float(d[0])), Fraction(float(d[1]))
    adx, ady = Fraction(float(a[0])) - dx, Fraction(float(a[1])) - dy
    bdx, bdy = Fraction(float(b[0])) - dx, Fraction(float(b[1])) - dy
    cdx, cdy = Fraction(float(c[0])) - dx, Fraction(float(c[1])) - dy
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (
        alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady)
    )
    return _sign_of(det)
