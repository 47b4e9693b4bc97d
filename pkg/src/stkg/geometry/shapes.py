"""Planar simple-features geometries in WGS84 degrees.

Coordinates are ``(lon, lat)`` float pairs. All geometry values are immutable
and hashable, so they can be used as dict keys and shipped to worker processes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple, Union

Coord = Tuple[float, float]
Ring = Tuple[Coord, ...]


class GeometryError(ValueError):
    pass


def _coords(seq) -> Tuple[Coord, ...]:
    return tuple((float(x), float(y)) for x, y in seq)


def _check_ring(ring: Ring) -> None:
    if len(ring) < 4:
        raise GeometryError(f"ring needs >= 4 positions, got {len(ring)}")
    if ring[0] != ring[-1]:
        raise GeometryError("ring is not closed")


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    kind = "Point"
    dimension = 0

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))

    @property
    def coords(self) -> Coord:
        return (self.x, self.y)


@dataclass(frozen=True)
class LineString:
    coords: Tuple[Coord, ...]

    kind = "LineString"
    dimension = 1

    def __post_init__(self):
        object.__setattr__(self, "coords", _coords(self.coords))
        if len(self.coords) < 2:
            raise GeometryError("LineString needs >= 2 positions")

    @property
    def is_closed(self) -> bool:
        return self.coords[0] == self.coords[-1]


@dataclass(frozen=True)
class Polygon:
    """Polygon as a tuple of rings; ``rings[0]`` is the shell, the rest are holes."""

    rings: Tuple[Ring, ...]

    kind = "Polygon"
    dimension = 2

    def __post_init__(self):
        rings = tuple(_coords(r) for r in self.rings)
        if not rings:
            raise GeometryError("Polygon needs a shell")
        for r in rings:
            _check_ring(r)
        object.__setattr__(self, "rings", rings)

    @property
    def shell(self) -> Ring:
        return self.rings[0]

    @property
    def holes(self) -> Tuple[Ring, ...]:
        return self.rings[1:]


@dataclass(frozen=True)
class MultiPoint:
    points: Tuple[Point, ...]

    kind = "MultiPoint"
    dimension = 0

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in self.points)
        if not pts:
            raise GeometryError("MultiPoint needs >= 1 point")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class MultiLineString:
    lines: Tuple[LineString, ...]

    kind = "MultiLineString"
    dimension = 1

    def __post_init__(self):
        lines = tuple(ln if isinstance(ln, LineString) else LineString(ln) for ln in self.lines)
        if not lines:
            raise GeometryError("MultiLineString needs >= 1 line")
        object.__setattr__(self, "lines", lines)


@dataclass(frozen=True)
class MultiPolygon:
    polygons: Tuple[Polygon, ...]

    kind = "MultiPolygon"
    dimension = 2

    def __post_init__(self):
        polys = tuple(p if isinstance(p, Polygon) else Polygon(p) for p in self.polygons)
        if not polys:
            raise GeometryError("MultiPolygon needs >= 1 polygon")
        object.__setattr__(self, "polygons", polys)


Geometry = Union[Point, LineString, Polygon, MultiPoint, MultiLineString, MultiPolygon]


@dataclass(frozen=True)
class Bbox:
    min_lon: float
    min_lat: float
    max_lon: float
    max_lat: float

    def __post_init__(self):
        if self.min_lon > self.max_lon or self.min_lat > self.max_lat:
            raise GeometryError(f"inverted bbox {self}")

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.min_lon, self.min_lat, self.max_lon, self.max_lat)

    def intersects(self, other: "Bbox") -> bool:
        return not (
            other.min_lon > self.max_lon
            or other.max_lon < self.min_lon
            or other.min_lat > self.max_lat
            or other.max_lat < self.min_lat
        )

    def contains_point(self, x: float, y: float) -> bool:
        return self.min_lon <= x <= self.max_lon and self.min_lat <= y <= self.max_lat

    @property
    def center(self) -> Coord:
        return ((self.min_lon + self.max_lon) / 2.0, (self.min_lat + self.max_lat) / 2.0)


def iter_coords(g: Geometry) -> Iterator[Coord]:
    """Yield every vertex of ``g`` (ring closures included)."""
    if isinstance(g, Point):
        yield g.coords
    elif isinstance(g, LineString):
        yield from g.coords
    elif isinstance(g, Polygon):
        for r in g.rings:
            yield from r
    elif isinstance(g, MultiPoint):
        for p in g.points:
            yield p.coords
    elif isinstance(g, MultiLineString):
        for ln in g.lines:
            yield from ln.coords
    elif isinstance(g, MultiPolygon):
        for p in g.polygons:
            for r in p.rings:
                yield from r
    else:
        raise TypeError(f"not a geometry: {g!r}")


def bbox(g: Geometry) -> Bbox:
    xs, ys = zip(*iter_coords(g))
    return Bbox(min(xs), min(ys), max(xs), max(ys))


def signed_area(ring: Ring) -> float:
    """Shoelace area; positive for counter-clockwise rings."""
    s = 0.0
    for (x1, y1), (x2, y2) in zip(ring, ring[1:]):
        s += x1 * y2 - x2 * y1
    return s / 2.0


def orient_ring(ring: Ring, ccw: bool) -> Ring:
    a = signed_area(ring)
    if a == 0 or (a > 0) == ccw:
        return tuple(ring)
    return tuple(reversed(ring))


def orient_polygon(p: Polygon) -> Polygon:
    """Shell counter-clockwise, holes clockwise."""
    return Polygon((orient_ring(p.shell, True),) + tuple(orient_ring(h, False) for h in p.holes))


def normalize(g: Geometry) -> Geometry:
    if isinstance(g, Polygon):
        return orient_polygon(g)
    if isinstance(g, MultiPolygon):
        return MultiPolygon(tuple(orient_polygon(p) for p in g.polygons))
    return g


def check_wgs84(g: Geometry) -> None:
    for x, y in iter_coords(g):
        if not (-180.0 <= x <= 180.0 and -90.0 <= y <= 90.0):
            raise GeometryError(f"coordinate ({x}, {y}) outside WGS84 bounds")


def ring_centroid(ring: Ring) -> Coord:
    """Area centroid of a simple ring; falls back to the vertex mean when degenerate."""
    a = signed_area(ring)
    if a == 0:
        pts = ring[:-1] or ring
        return (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))
    cx = cy = 0.0
    for (x1, y1), (x2, y2) in zip(ring, ring[1:]):
        f = x1 * y2 - x2 * y1
        cx += (x1 + x2) * f
        cy += (y1 + y2) * f
    return (cx / (6.0 * a), cy / (6.0 * a))
