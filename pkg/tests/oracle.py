"""Brute-force DE-9IM oracle for points, single segments and convex polygons.

Independent of the package's arrangement code: every location test is done
with exact Fractions directly on the point-set definitions.

* 0-dim pieces: all vertices and all pairwise edge intersection points.
* 1-dim pieces: midpoints of the sub-intervals each edge is cut into by the
  critical points lying on it.
* 2-dim pieces: areas from convex polygon clipping.
"""
from __future__ import annotations

from fractions import Fraction as F
from itertools import product

I, B, E = 0, 1, 2


def _pt(p):
    return (F(p[0]), F(p[1]))


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def on_closed_segment(p, a, b):
    return cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def seg_intersection_points(a, b, c, d):
    """Finite set of notable points where closed segments ab and cd meet."""
    out = set()
    for p in (a, b):
        if on_closed_segment(p, c, d):
            out.add(p)
    for p in (c, d):
        if on_closed_segment(p, a, b):
            out.add(p)
    den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
    if den != 0:
        t = ((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])) / den
        u = ((c[0] - a[0]) * (b[1] - a[1]) - (c[1] - a[1]) * (b[0] - a[0])) / den
        if 0 <= t <= 1 and 0 <= u <= 1:
            out.add((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return out


class OPoint:
    dim = 0

    def __init__(self, p):
        self.p = _pt(p)
        self.vertices = [self.p]
        self.edges = []

    def locate(self, q):
        return I if q == self.p else E

    def area(self):
        return F(0)


class OSegment:
    dim = 1

    def __init__(self, a, b):
        self.a, self.b = _pt(a), _pt(b)
        assert self.a != self.b
        self.vertices = [self.a, self.b]
        self.edges = [(self.a, self.b)]

    def locate(self, q):
        if q == self.a or q == self.b:
            return B
        return I if on_closed_segment(q, self.a, self.b) else E

    def area(self):
        return F(0)


class OConvex:
    dim = 2

    def __init__(self, pts):
        pts = [_pt(p) for p in pts]
        if shoelace(pts) < 0:
            pts.reverse()
        assert shoelace(pts) > 0
        self.vertices = pts
        self.edges = list(zip(pts, pts[1:] + pts[:1]))

    def locate(self, q):
        s = [cross(a, b, q) for a, b in self.edges]
        if any(v < 0 for v in s):
            return E
        return B if any(v == 0 for v in s) else I

    def area(self):
        return shoelace(self.vertices)


def shoelace(pts):
    n = len(pts)
    return sum(pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1] for i in range(n)) / 2


def clip_convex(subject, clip):
    """Sutherland-Hodgman: ``subject`` polygon clipped by convex CCW ``clip``."""
    out = list(subject)
    for a, b in zip(clip, clip[1:] + clip[:1]):
        if not out:
            break
        inp, out = out, []
        for i, p in enumerate(inp):
            q = inp[(i + 1) % len(inp)]
            pin, qin = cross(a, b, p) >= 0, cross(a, b, q) >= 0
            if pin:
                out.append(p)
            if pin != qin:
                den = (q[0] - p[0]) * (b[1] - a[1]) - (q[1] - p[1]) * (b[0] - a[0])
                t = ((a[0] - p[0]) * (b[1] - a[1]) - (a[1] - p[1]) * (b[0] - a[0])) / den
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def oracle_matrix(ga, gb):
    """Return the nine dimensions row-major as a tuple."""
    m = [[-1] * 3 for _ in range(3)]

    def bump(la, lb, d):
        if d > m[la][lb]:
            m[la][lb] = d

    crit = set(ga.vertices) | set(gb.vertices)
    edges = ga.edges + gb.edges
    for (a, b), (c, d) in product(edges, edges):
        crit |= seg_intersection_points(a, b, c, d)
    for p in crit:
        bump(ga.locate(p), gb.locate(p), 0)
    for a, b in edges:
        cuts = sorted({p for p in crit if on_closed_segment(p, a, b)} | {a, b})
        for p, q in zip(cuts, cuts[1:]):
            mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
            bump(ga.locate(mid), gb.locate(mid), 1)
    bump(E, E, 2)
    area_a, area_b = ga.area(), gb.area()
    common = F(0)
    if ga.dim == 2 and gb.dim == 2:
        inter = clip_convex(ga.vertices, gb.vertices)
        common = shoelace(inter) if len(inter) >= 3 else F(0)
    if common > 0:
        bump(I, I, 2)
    if area_a - common > 0:
        bump(I, E, 2)
    if area_b - common > 0:
        bump(E, I, 2)
    return tuple(v for row in m for v in row)


def to_geometry(o):
    """Matching package geometry for an oracle shape."""
    from stkg.geometry import LineString, Point, Polygon

    if isinstance(o, OPoint):
        return Point(float(o.p[0]), float(o.p[1]))
    if isinstance(o, OSegment):
        return LineString(((float(o.a[0]), float(o.a[1])), (float(o.b[0]), float(o.b[1]))))
    ring = [(float(x), float(y)) for x, y in o.vertices]
    return Polygon((tuple(ring + ring[:1]),))


def convex_hull(points):
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def random_shape(rng, grid=8, denom=4):
    """Random point, segment or convex polygon on a dyadic lattice (exact in binary floats)."""
    def coord():
        return (F(rng.randint(0, grid * denom), denom), F(rng.randint(0, grid * denom), denom))

    kind = rng.randrange(3)
    if kind == 0:
        return OPoint(coord())
    if kind == 1:
        a = coord()
        b = coord()
        while b == a:
            b = coord()
        return OSegment(a, b)
    while True:
        hull = convex_hull([coord() for _ in range(rng.randint(3, 6))])
        if len(hull) >= 3 and shoelace(hull) != 0:
            return OConvex(hull)
