"""Exact planar predicates on integer-scaled coordinates.

Input floats are dyadic rationals, so multiplying every coordinate of a
problem by one common power of two turns them into Python ints without loss.
Derived points (segment intersections, midpoints) are kept in homogeneous
form ``(X, Y, W)`` with ``W > 0`` and ``gcd(X, Y, W) == 1``, which makes the
tuple itself a canonical hashable key. Segment endpoints are always original
vertices, i.e. ``W == 1``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, List, Tuple

HPoint = Tuple[int, int, int]


def common_shift(values: Iterable[float]) -> int:
    """Smallest ``k`` such that every value times ``2**k`` is an integer."""
    k = 0
    for v in values:
        d = v.as_integer_ratio()[1]
        b = d.bit_length() - 1
        if b > k:
            k = b
    return k


def to_int(v: float, shift: int) -> int:
    n, d = v.as_integer_ratio()
    return n * ((1 << shift) // d)


def norm(X: int, Y: int, W: int) -> HPoint:
    if W < 0:
        X, Y, W = -X, -Y, -W
    if W != 1:
        g = gcd(gcd(X, Y), W)
        if g > 1:
            X, Y, W = X // g, Y // g, W // g
    return (X, Y, W)


def orient(a: HPoint, b: HPoint, p: HPoint) -> int:
    """Sign of the turn a -> b -> p; ``a`` and ``b`` must have ``W == 1``."""
    X, Y, W = p
    d = (b[0] - a[0]) * (Y - a[1] * W) - (b[1] - a[1]) * (X - a[0] * W)
    return (d > 0) - (d < 0)


def in_box(a: HPoint, b: HPoint, p: HPoint) -> bool:
    X, Y, W = p
    lo_x, hi_x = (a[0], b[0]) if a[0] <= b[0] else (b[0], a[0])
    lo_y, hi_y = (a[1], b[1]) if a[1] <= b[1] else (b[1], a[1])
    return lo_x * W <= X <= hi_x * W and lo_y * W <= Y <= hi_y * W


def on_segment(a: HPoint, b: HPoint, p: HPoint) -> bool:
    return in_box(a, b, p) and orient(a, b, p) == 0


def segment_intersections(a: HPoint, b: HPoint, c: HPoint, d: HPoint) -> List[HPoint]:
    """All points shared by closed segments ab and cd.

    Returns at most one point for crossing/touching segments, and the (up to
    two) extreme points of the shared stretch for collinear overlaps.
    """
    if (
        max(a[0], b[0]) < min(c[0], d[0])
        or max(c[0], d[0]) < min(a[0], b[0])
        or max(a[1], b[1]) < min(c[1], d[1])
        or max(c[1], d[1]) < min(a[1], b[1])
    ):
        return []
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if d1 == 0 and d2 == 0:
        out = set()
        for p in (a, b):
            if in_box(c, d, p):
                out.add(p)
        for p in (c, d):
            if in_box(a, b, p):
                out.add(p)
        return sorted(out)
    if d1 * d2 < 0 and d3 * d4 < 0:
        # exact crossing point from the two signed areas
        s1 = (d[0] - c[0]) * (a[1] - c[1]) - (d[1] - c[1]) * (a[0] - c[0])
        s2 = (d[0] - c[0]) * (b[1] - c[1]) - (d[1] - c[1]) * (b[0] - c[0])
        W = s2 - s1
        return [norm(a[0] * s2 - b[0] * s1, a[1] * s2 - b[1] * s1, W)]
    out = []
    if d1 == 0 and in_box(c, d, a):
        out.append(a)
    elif d2 == 0 and in_box(c, d, b):
        out.append(b)
    elif d3 == 0 and in_box(a, b, c):
        out.append(c)
    elif d4 == 0 and in_box(a, b, d):
        out.append(d)
    return out


def midpoint(p: HPoint, q: HPoint) -> HPoint:
    return norm(p[0] * q[2] + q[0] * p[2], p[1] * q[2] + q[1] * p[2], 2 * p[2] * q[2])


def param_key(a: HPoint, b: HPoint, p: HPoint) -> Fraction:
    """Monotone position of ``p`` along segment ab (unnormalised projection)."""
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    return Fraction((p[0] - a[0] * p[2]) * dx + (p[1] - a[1] * p[2]) * dy, p[2])


def ring_crossings(ring: List[HPoint], p: HPoint) -> int:
    """Number of ring edges crossed by the rightward ray from ``p``.

    Assumes ``p`` is not on the ring.
    """
    X, Y, W = p
    n = 0
    for a, b in zip(ring, ring[1:]):
        above_a = a[1] * W > Y
        above_b = b[1] * W > Y
        if above_a != above_b:
            o = orient(a, b, p)
            if (o > 0) == (b[1] > a[1]):
                n += 1
    return n


def orient2d(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Exact orientation sign for float inputs (floating filter + rational fallback)."""
    l = (bx - ax) * (cy - ay)
    r = (by - ay) * (cx - ax)
    det = l - r
    bound = 3.3306690738754716e-16 * (abs(l) + abs(r))
    if det > bound:
        return 1
    if det < -bound:
        return -1
    fa = Fraction(ax), Fraction(ay)
    e = (Fraction(bx) - fa[0]) * (Fraction(cy) - fa[1]) - (Fraction(by) - fa[1]) * (Fraction(cx) - fa[0])
    return (e > 0) - (e < 0)


def locate_in_rings(rings, x: float, y: float) -> str:
    """Locate a float point against polygon rings (even-odd rule), exactly.

    Returns ``"B"`` on any ring, ``"I"`` inside, ``"E"`` outside.
    """
    inside = False
    for ring in rings:
        for (ax, ay), (bx, by) in zip(ring, ring[1:]):
            if (ay > y) != (by > y):
                o = orient2d(ax, ay, bx, by, x, y)
                if o == 0:
                    return "B"
                if (o > 0) == (by > ay):
                    inside = not inside
            elif ay == y == by and min(ax, bx) <= x <= max(ax, bx):
                return "B"
            elif (ay == y and ax == x) or (by == y and bx == x):
                return "B"
    return "I" if inside else "E"
