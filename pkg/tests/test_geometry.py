import pytest
from hypothesis import given

from conftest import geometries
from stkg.geometry import (
    Bbox,
    GeometryError,
    LineString,
    MultiPolygon,
    Point,
    Polygon,
    WktSyntaxError,
    bbox,
    from_wkt,
    to_wkt,
)
from stkg.geometry.shapes import normalize, signed_area


def test_point_wkt():
    assert to_wkt(Point(8.4631, 49.4836)) == "POINT (8.4631 49.4836)"


def test_polygon_from_wkt():
    g = from_wkt("POLYGON ((0 0, 1 0, 1 1, 0 0))")
    assert isinstance(g, Polygon)
    assert len(g.rings) == 1 and len(g.shell) == 4


@pytest.mark.parametrize("text", [
    "POINT (1 2)",
    "LINESTRING (0 0, 1 1, 2 0)",
    "POLYGON ((0 0, 4 0, 4 4, 0 0), (1 1, 2 1, 2 2, 1 1))",
    "MULTIPOINT ((0 0), (1 1))",
    "MULTILINESTRING ((0 0, 1 1), (2 2, 3 3))",
    "MULTIPOLYGON (((0 0, 1 0, 1 1, 0 0)), ((2 0, 3 0, 3 1, 2 0)))",
])
def test_wkt_canonical_text_roundtrip(text):
    assert to_wkt(from_wkt(text)) == text


def test_multipoint_bare_form_accepted():
    assert from_wkt("MULTIPOINT (0 0, 1 1)") == from_wkt("MULTIPOINT ((0 0), (1 1))")


@pytest.mark.parametrize("text", ["POINT (1)", "POINT 1 2", "POLYGON ((0 0, 1 0, 1 1))", "CIRCLE (1 2)",
                                  "POINT (1 2) extra", "POINT EMPTY", "POINT Z (1 2 3)"])
def test_wkt_errors(text):
    with pytest.raises((WktSyntaxError, GeometryError)):
        from_wkt(text)


def test_wkt_error_position():
    with pytest.raises(WktSyntaxError) as exc:
        from_wkt("POINT (1 x)")
    assert exc.value.position == 9


@given(geometries)
def test_wkt_roundtrip_identity(g):
    assert from_wkt(to_wkt(g)) == g


def test_bbox_examples():
    assert bbox(Point(3, 4)).as_tuple() == (3, 4, 3, 4)
    assert bbox(LineString(((0, 0), (2, 1)))).as_tuple() == (0, 0, 2, 1)
    sq = lambda dx: Polygon((((dx, 0), (dx + 1, 0), (dx + 1, 1), (dx, 1), (dx, 0)),))
    assert bbox(MultiPolygon((sq(0), sq(2)))).as_tuple() == (0, 0, 3, 1)


@given(geometries)
def test_bbox_is_tight(g):
    from stkg.geometry import iter_coords

    xs = [x for x, _ in iter_coords(g)]
    ys = [y for _, y in iter_coords(g)]
    assert bbox(g).as_tuple() == (min(xs), min(ys), max(xs), max(ys))


def test_normalize_orients_shell_ccw_and_holes_cw():
    p = Polygon((((0, 0), (0, 4), (4, 4), (4, 0), (0, 0)), ((1, 1), (2, 1), (2, 2), (1, 1))))
    n = normalize(p)
    assert signed_area(n.shell) > 0
    assert signed_area(n.holes[0]) < 0


def test_invalid_shapes():
    with pytest.raises(GeometryError):
        LineString(((0, 0),))
    with pytest.raises(GeometryError):
        Polygon((((0, 0), (1, 0), (1, 1), (0, 1)),))
    with pytest.raises(ValueError):
        Bbox(1, 0, 0, 1)
