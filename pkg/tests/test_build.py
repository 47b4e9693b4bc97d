import itertools

import osmium
import pytest
import shapely
from hypothesis import given
from hypothesis import strategies as st

from stkg.fixtures import synthetic_elements, write_snapshot
from stkg.geometry import LineString, MultiLineString, MultiPolygon, Polygon, from_wkt, to_wkt
from stkg.geometry.build import DanglingWayRef, NoGeometry, UnclosedRing, build_geometry, is_area_way
from stkg.osm import DanglingNodeRef, Member, NodeElement, RelationElement, TagSet, WayElement

COORDS = {1: (0, 0), 2: (1, 0), 3: (1, 1), 10: (0, 0), 11: (2, 0), 12: (2, 2), 13: (0, 2),
          20: (0.5, 0.5), 21: (1.5, 0.5), 22: (1.5, 1.5), 23: (0.5, 1.5)}


def locate(i):
    try:
        return COORDS[i]
    except KeyError:
        raise DanglingNodeRef(i) from None


def way(wid, refs, **tags):
    return WayElement(wid, tuple(refs), TagSet(tags))


def test_closed_way_with_area_tag():
    g = build_geometry(way(1, [1, 2, 3, 1], building="yes"), locate)
    assert to_wkt(g) == "POLYGON ((0 0, 1 0, 1 1, 0 0))"


def test_closed_way_without_area_tag():
    assert to_wkt(build_geometry(way(1, [1, 2, 3, 1], highway="service"), locate)) == "LINESTRING (0 0, 1 0, 1 1, 0 0)"


@pytest.mark.parametrize("tags,expected", [
    ({"building": "yes"}, True),
    ({"highway": "pedestrian", "area": "yes"}, True),
    ({"building": "yes", "area": "no"}, False),
    ({"barrier": "fence"}, False),
    ({}, False),
])
def test_area_rule(tags, expected):
    assert is_area_way(way(1, [1, 2, 3, 1], **tags)) is expected
    assert is_area_way(way(1, [1, 2, 3], **tags)) is False


WAYS = {100: (10, 11, 12), 101: (12, 13, 10), 102: (20, 21, 22, 23, 20)}


def mp(members, **tags):
    return RelationElement(9, tuple(Member("way", w, r) for w, r in members), TagSet({"type": "multipolygon", **tags}))


def test_multipolygon_with_hole():
    g = build_geometry(mp([(100, "outer"), (101, "outer"), (102, "inner")]), locate, WAYS.get)
    assert isinstance(g, MultiPolygon) and len(g.polygons) == 1 and len(g.polygons[0].holes) == 1
    assert shapely.from_wkt(to_wkt(g)).area == pytest.approx(3.0)


@given(st.permutations([(100, "outer"), (101, "outer"), (102, "inner")]), st.lists(st.booleans(), min_size=3, max_size=3),
       st.booleans())
def test_ring_assembly_invariance(order, flips, drop_roles):
    ways = {w: tuple(reversed(r)) if f else r for (w, r), f in zip(WAYS.items(), flips)}
    members = [(w, "" if drop_roles else role) for w, role in order]
    expected = build_geometry(mp([(100, "outer"), (101, "outer"), (102, "inner")]), locate, WAYS.get)
    assert build_geometry(mp(members), locate, ways.get) == expected


def test_unclosed_ring_and_dangling_refs():
    with pytest.raises(UnclosedRing):
        build_geometry(mp([(100, "outer")]), locate, WAYS.get)
    with pytest.raises(DanglingWayRef):
        build_geometry(mp([(100, "outer"), (555, "outer")]), locate, WAYS.get)
    with pytest.raises(DanglingNodeRef):
        build_geometry(way(1, [1, 99]), locate)


def test_route_and_other_relations():
    route = RelationElement(5, (Member("way", 100, ""), Member("way", 101, "")), TagSet({"type": "route"}))
    g = build_geometry(route, locate, WAYS.get)
    assert isinstance(g, MultiLineString) and len(g.lines) == 2
    with pytest.raises(NoGeometry):
        build_geometry(RelationElement(6, (Member("way", 100, ""),), TagSet({"type": "site"})), locate, WAYS.get)


def test_nested_relation_one_level():
    inner = RelationElement(7, (Member("way", 100, "outer"), Member("way", 101, "outer")), TagSet({"type": "multipolygon"}))
    outer = RelationElement(8, (Member("relation", 7, ""),), TagSet({"type": "multipolygon"}))
    g = build_geometry(outer, locate, WAYS.get, {7: inner}.get)
    assert isinstance(g, MultiPolygon)


def test_node_point():
    assert to_wkt(build_geometry(NodeElement(1, 49.4836, 8.4631, TagSet()), locate)) == "POINT (8.4631 49.4836)"


def test_areas_match_reference_assembler(tmp_path):
    """Closed area ways and multipolygon relations agree with libosmium's area assembler."""
    els = synthetic_elements(400, seed=11)
    path = write_snapshot(els, tmp_path / "s.osm.pbf")
    fab = osmium.geom.WKTFactory()
    ref = {}
    for o in osmium.FileProcessor(str(path)).with_locations().with_areas():
        if o.is_area():
            key = ("way" if o.from_way() else "relation", o.orig_id())
            ref[key] = shapely.from_wkt(fab.create_multipolygon(o))
    nodes = {e.id: (e.lon, e.lat) for e in els if e.kind == "node"}
    ways = {e.id: e.node_refs for e in els if e.kind == "way"}
    ours = {}
    for e in els:
        if e.kind == "way" and is_area_way(e):
            ours[("way", e.id)] = build_geometry(e, nodes.__getitem__)
        elif e.kind == "relation":
            ours[("relation", e.id)] = build_geometry(e, nodes.__getitem__, ways.get)
    assert set(ours) == set(ref)
    for key, g in ours.items():
        assert shapely.from_wkt(to_wkt(g)).equals(ref[key]), key
