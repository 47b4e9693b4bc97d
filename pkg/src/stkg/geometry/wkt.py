"""WKT reading and writing for the six supported geometry variants.

The writer emits ``TYPE (x y, x y)`` with a space after commas and the
shortest decimal that round-trips each float, so ``from_wkt(to_wkt(g)) == g``.
"""
from __future__ import annotations

import re

from .shapes import (
    Geometry,
    GeometryError,
    LineString,
    MultiLineString,
    MultiPoint,
    MultiPolygon,
    Point,
    Polygon,
)


class WktSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def format_number(v: float) -> str:
    if v == 0:
        return "0"
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _fmt_coords(coords) -> str:
    return ", ".join(f"{format_number(x)} {format_number(y)}" for x, y in coords)


def _fmt_polygon_body(p: Polygon) -> str:
    return "(" + ", ".join(f"({_fmt_coords(r)})" for r in p.rings) + ")"


def to_wkt(g: Geometry) -> str:
    if isinstance(g, Point):
        return f"POINT ({format_number(g.x)} {format_number(g.y)})"
    if isinstance(g, LineString):
        return f"LINESTRING ({_fmt_coords(g.coords)})"
    if isinstance(g, Polygon):
        return f"POLYGON {_fmt_polygon_body(g)}"
    if isinstance(g, MultiPoint):
        return "MULTIPOINT (" + ", ".join(f"({format_number(p.x)} {format_number(p.y)})" for p in g.points) + ")"
    if isinstance(g, MultiLineString):
        return "MULTILINESTRING (" + ", ".join(f"({_fmt_coords(ln.coords)})" for ln in g.lines) + ")"
    if isinstance(g, MultiPolygon):
        return "MULTIPOLYGON (" + ", ".join(_fmt_polygon_body(p) for p in g.polygons) + ")"
    raise TypeError(f"not a geometry: {g!r}")


_TOKEN = re.compile(
    r"\s*(?:(?P<num>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)|(?P<word>[A-Za-z]+)|(?P<punct>[(),]))"
)


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        i = 0
        n = len(text)
        while i < n:
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise WktSyntaxError(f"unexpected character {text[i]!r}", i)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            i = m.end()
        self.tokens.append(("eof", "", n))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.next()
        if v != value:
            raise WktSyntaxError(f"expected {value!r}, got {v or 'end of input'!r}", pos)

    def number(self) -> float:
        kind, v, pos = self.next()
        if kind != "num":
            raise WktSyntaxError(f"expected number, got {v or 'end of input'!r}", pos)
        return float(v)

    def coord(self):
        x = self.number()
        y = self.number()
        if self.peek()[0] == "num":
            raise WktSyntaxError("only 2D coordinates are supported", self.peek()[2])
        return (x, y)

    def coord_list(self):
        self.expect("(")
        out = [self.coord()]
        while self.peek()[1] == ",":
            self.next()
            out.append(self.coord())
        self.expect(")")
        return out

    def list_of(self, item):
        self.expect("(")
        out = [item()]
        while self.peek()[1] == ",":
            self.next()
            out.append(item())
        self.expect(")")
        return out

    def point_member(self):
        # MULTIPOINT accepts both ((1 2), (3 4)) and (1 2, 3 4)
        if self.peek()[1] == "(":
            self.next()
            c = self.coord()
            self.expect(")")
            return c
        return self.coord()


def from_wkt(text: str) -> Geometry:
    r = _Reader(text)
    kind, word, pos = r.next()
    if kind != "word":
        raise WktSyntaxError("expected geometry type", pos)
    tag = word.upper()
    if r.peek()[0] == "word":
        _, extra, epos = r.peek()
        if extra.upper() == "EMPTY":
            raise WktSyntaxError("EMPTY geometries are not supported", epos)
        raise WktSyntaxError(f"unsupported modifier {extra!r}", epos)
    try:
        if tag == "POINT":
            r.expect("(")
            x, y = r.coord()
            r.expect(")")
            g: Geometry = Point(x, y)
        elif tag == "LINESTRING":
            g = LineString(tuple(r.coord_list()))
        elif tag == "POLYGON":
            g = Polygon(tuple(tuple(ring) for ring in r.list_of(r.coord_list)))
        elif tag == "MULTIPOINT":
            g = MultiPoint(tuple(Point(*c) for c in r.list_of(r.point_member)))
        elif tag == "MULTILINESTRING":
            g = MultiLineString(tuple(LineString(tuple(c)) for c in r.list_of(r.coord_list)))
        elif tag == "MULTIPOLYGON":
            polys = r.list_of(lambda: r.list_of(r.coord_list))
            g = MultiPolygon(tuple(Polygon(tuple(tuple(ring) for ring in p)) for p in polys))
        else:
            raise WktSyntaxError(f"unsupported geometry type {word!r}", pos)
    except GeometryError as exc:
        raise WktSyntaxError(str(exc), pos) from exc
    kind, v, end = r.next()
    if kind != "eof":
        raise WktSyntaxError(f"trailing input {v!r}", end)
    return g
