"""DE-9IM intersection matrix by exact planar arrangement.

Both geometries' linework is noded against each other (every crossing,
touch, overlap end and foreign vertex splits a segment). After noding, the
plane decomposes into nodes, open edges and open faces whose location with
respect to each geometry is constant, so every matrix cell is the maximum
over those pieces of their dimension:

* node  -> 0 at (loc_a(node), loc_b(node))
* edge  -> 1 at (loc_a(edge), loc_b(edge))
* face  -> 2 at the labels of the faces left and right of every edge,
  plus the unbounded exterior face.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Set, Tuple

from ..geometry.shapes import (
    Geometry,
    LineString,
    MultiLineString,
    MultiPoint,
    MultiPolygon,
    Point,
    Polygon,
    iter_coords,
    signed_area,
)
from .exact import (
    HPoint,
    common_shift,
    midpoint,
    on_segment,
    orient,
    param_key,
    ring_crossings,
    segment_intersections,
    to_int,
)
from .matrix import De9imMatrix

INTERIOR, BOUNDARY, EXTERIOR = 0, 1, 2


class UnsupportedPair(TypeError):
    pass


@dataclass
class _Seg:
    a: HPoint
    b: HPoint
    ring: bool
    left_interior: bool = False


@dataclass
class _Parts:
    dim: int
    points: Set[HPoint] = field(default_factory=set)
    segs: List[_Seg] = field(default_factory=list)
    rings: List[List[HPoint]] = field(default_factory=list)
    boundary: Set[HPoint] = field(default_factory=set)
    box: Tuple[int, int, int, int] = (0, 0, 0, 0)

    @property
    def boundary_dim(self) -> int:
        if self.dim == 2:
            return 1
        if self.dim == 1:
            return 0 if self.boundary else -1
        return -1

    def locate(self, p: HPoint) -> int:
        X, Y, W = p
        x0, y0, x1, y1 = self.box
        if X < x0 * W or X > x1 * W or Y < y0 * W or Y > y1 * W:
            return EXTERIOR
        if self.dim == 0:
            return INTERIOR if p in self.points else EXTERIOR
        for s in self.segs:
            if on_segment(s.a, s.b, p):
                if self.dim == 2:
                    return BOUNDARY
                return BOUNDARY if p in self.boundary else INTERIOR
        if self.dim == 1:
            return EXTERIOR
        crossings = sum(ring_crossings(r, p) for r in self.rings)
        return INTERIOR if crossings % 2 else EXTERIOR


def _ipt(c, shift) -> HPoint:
    return (to_int(c[0], shift), to_int(c[1], shift), 1)


def _add_line(parts: _Parts, coords, shift, endpoint_count: Dict[HPoint, int]) -> None:
    pts = [_ipt(c, shift) for c in coords]
    segs = [(a, b) for a, b in zip(pts, pts[1:]) if a != b]
    if not segs:
        parts.points.add(pts[0])
        return
    for a, b in segs:
        parts.segs.append(_Seg(a, b, ring=False))
    for e in (pts[0], pts[-1]):
        endpoint_count[e] = endpoint_count.get(e, 0) + 1


def _add_polygon(parts: _Parts, poly: Polygon, shift) -> None:
    for i, ring in enumerate(poly.rings):
        pts = [_ipt(c, shift) for c in ring]
        dedup = [pts[0]]
        for p in pts[1:]:
            if p != dedup[-1]:
                dedup.append(p)
        if len(dedup) < 4:
            continue
        ccw = signed_area(ring) > 0
        left_interior = ccw if i == 0 else not ccw
        parts.rings.append(dedup)
        for a, b in zip(dedup, dedup[1:]):
            parts.segs.append(_Seg(a, b, ring=True, left_interior=left_interior))


def _decompose(g: Geometry, shift: int) -> _Parts:
    if isinstance(g, (Point, MultiPoint)):
        parts = _Parts(dim=0)
        pts = [g] if isinstance(g, Point) else list(g.points)
        parts.points = {_ipt(p.coords, shift) for p in pts}
    elif isinstance(g, (LineString, MultiLineString)):
        parts = _Parts(dim=1)
        counts: Dict[HPoint, int] = {}
        for ln in [g] if isinstance(g, LineString) else g.lines:
            _add_line(parts, ln.coords, shift, counts)
        parts.boundary = {p for p, n in counts.items() if n % 2 == 1}
        if not parts.segs:
            parts.dim = 0
    elif isinstance(g, (Polygon, MultiPolygon)):
        parts = _Parts(dim=2)
        for poly in [g] if isinstance(g, Polygon) else g.polygons:
            _add_polygon(parts, poly, shift)
        if not parts.segs:
            raise UnsupportedPair("degenerate polygon with no area")
    else:
        raise UnsupportedPair(f"unsupported geometry {type(g).__name__}")
    xs = [p[0] for p in parts.points] + [v for s in parts.segs for v in (s.a[0], s.b[0])]
    ys = [p[1] for p in parts.points] + [v for s in parts.segs for v in (s.a[1], s.b[1])]
    parts.box = (min(xs), min(ys), max(xs), max(ys))
    return parts


def _disjoint_matrix(pa: _Parts, pb: _Parts) -> De9imMatrix:
    F = -1
    return De9imMatrix(
        (
            (F, F, pa.dim),
            (F, F, pa.boundary_dim),
            (pb.dim, pb.boundary_dim, 2),
        )
    )


class _Edge:
    __slots__ = ("p", "q", "line", "ring", "left_in", "right_in")

    def __init__(self, p, q):
        self.p = p
        self.q = q
        self.line = [False, False]
        self.ring = [False, False]
        self.left_in = [False, False]
        self.right_in = [False, False]


def relate(a: Geometry, b: Geometry) -> De9imMatrix:
    """Compute the DE-9IM matrix of ``a`` against ``b``."""
    shift = common_shift(v for g in (a, b) for c in iter_coords(g) for v in c)
    parts = (_decompose(a, shift), _decompose(b, shift))
    ba, bb = parts[0].box, parts[1].box
    if ba[2] < bb[0] or bb[2] < ba[0] or ba[3] < bb[1] or bb[3] < ba[1]:
        return _disjoint_matrix(*parts)

    # split points per segment, and the set of geometries whose linework each node lies on
    splits: List[List[Set[HPoint]]] = [[{s.a, s.b} for s in p.segs] for p in parts]
    on_work: Dict[HPoint, Set[int]] = {}

    def mark(pt: HPoint, g: int) -> None:
        on_work.setdefault(pt, set()).add(g)

    for g in (0, 1):
        for s in parts[g].segs:
            mark(s.a, g)
            mark(s.b, g)
    overlaps: List[Tuple[int, int]] = []
    for i, sa in enumerate(parts[0].segs):
        for j, sb in enumerate(parts[1].segs):
            found = segment_intersections(sa.a, sa.b, sb.a, sb.b)
            for pt in found:
                splits[0][i].add(pt)
                splits[1][j].add(pt)
                mark(pt, 0)
                mark(pt, 1)
            if len(found) == 2:
                overlaps.append((i, j))
    for g in (0, 1):
        other = 1 - g
        for pt in parts[g].points:
            for j, s in enumerate(parts[other].segs):
                if on_segment(s.a, s.b, pt):
                    splits[other][j].add(pt)
                    mark(pt, other)

    # collinear overlaps must yield identical sub-edges on both sides, so split
    # points are exchanged along each shared stretch until nothing changes
    changed = bool(overlaps)
    while changed:
        changed = False
        for i, j in overlaps:
            sa, sb = parts[0].segs[i], parts[1].segs[j]
            for src, dst, seg in ((splits[0][i], splits[1][j], sb), (splits[1][j], splits[0][i], sa)):
                for pt in src - dst:
                    if on_segment(seg.a, seg.b, pt):
                        dst.add(pt)
                        changed = True

    edges: Dict[Tuple[HPoint, HPoint], _Edge] = {}
    for g in (0, 1):
        for seg, pts in zip(parts[g].segs, splits[g]):
            ordered = sorted(pts, key=lambda p: param_key(seg.a, seg.b, p))
            for u, v in zip(ordered, ordered[1:]):
                key = (u, v) if u < v else (v, u)
                e = edges.get(key)
                if e is None:
                    e = edges[key] = _Edge(*key)
                if seg.ring:
                    e.ring[g] = True
                    forward = key[0] == u
                    if seg.left_interior == forward:
                        e.left_in[g] = True
                    else:
                        e.right_in[g] = True
                else:
                    e.line[g] = True

    m = [[-1, -1, -1], [-1, -1, -1], [-1, -1, 2]]

    def put(i: int, j: int, d: int) -> None:
        if m[i][j] < d:
            m[i][j] = d

    nodes = set(on_work) | parts[0].points | parts[1].points
    for pt in nodes:
        locs = []
        for g in (0, 1):
            pg = parts[g]
            if g in on_work.get(pt, ()):
                if pg.dim == 2:
                    locs.append(BOUNDARY)
                else:
                    locs.append(BOUNDARY if pt in pg.boundary else INTERIOR)
            elif pg.dim == 0:
                locs.append(INTERIOR if pt in pg.points else EXTERIOR)
            else:
                locs.append(pg.locate(pt))
        put(locs[0], locs[1], 0)

    for e in edges.values():
        mid = None
        edge_loc = []
        sides = []
        for g in (0, 1):
            pg = parts[g]
            if e.line[g]:
                edge_loc.append(INTERIOR)
                sides.append((EXTERIOR, EXTERIOR))
            elif e.ring[g]:
                both = e.left_in[g] and e.right_in[g]
                edge_loc.append(INTERIOR if both else BOUNDARY)
                sides.append(
                    (INTERIOR if e.left_in[g] else EXTERIOR, INTERIOR if e.right_in[g] else EXTERIOR)
                )
            else:
                if pg.dim == 0:
                    loc = EXTERIOR
                else:
                    if mid is None:
                        mid = midpoint(e.p, e.q)
                    loc = pg.locate(mid)
                edge_loc.append(loc)
                side = loc if pg.dim == 2 else EXTERIOR
                sides.append((side, side))
        put(edge_loc[0], edge_loc[1], 1)
        put(sides[0][0], sides[1][0], 2)
        put(sides[0][1], sides[1][1], 2)

    return De9imMatrix(tuple(tuple(r) for r in m))


def relate_string(a: Geometry, b: Geometry) -> str:
    return relate(a, b).to_string()


def dimension_of(g: Geometry) -> int:
    return g.dimension
