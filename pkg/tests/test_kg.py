import csv
import io
import json
from datetime import date

import h3
import pytest

from stkg.geometry import Point, from_wkt
from stkg.hexgrid import cell_boundary, children, neighbors
from stkg.kg import CommonTagHierarchy, emit_geometry_quads, emit_grid_quads, emit_relation_quads, emit_tag_quads, serialize
from stkg.kg.terms import GEOMETRY, Term
from stkg.topo import relate

DAY = date(2024, 1, 1)
CELL = "881fae61b9fffff"
H = CommonTagHierarchy.load()

TABLE2 = [
    "240974013,rdf:type,university,2024-01-01",
    "university,rdfs:subClassOf,amenity,2024-01-01",
    "240974013,addr:city,Mannheim,2024-01-01",
    "240974013,geo:hasGeometry,geo240974013,2024-01-01",
    "881fae61b9fffff,geo:sfContains,240974013,2024-01-01",
    "881fae61b9fffff,geo:ehCovers,240974013,2024-01-01",
    "881fae61b9fffff,geo:sfIntersects,240974013,2024-01-01",
]


def csv_lines(quads):
    return serialize(quads, "csv").decode().splitlines()


def test_tag_quads():
    seen = set()
    qs = emit_tag_quads("way/240974013", [("amenity", "university"), ("addr:city", "Mannheim")], H, DAY, seen)
    assert csv_lines(qs)[1:] == sorted([TABLE2[2], TABLE2[0], TABLE2[1]])
    again = emit_tag_quads("way/1", [("amenity", "university")], H, DAY, seen)
    assert len(again) == 1  # subclass edge already emitted for this date
    assert emit_tag_quads("way/1", [], H, DAY) == []


def test_geometry_quads():
    qs = emit_geometry_quads("node/1", Point(8.4631, 49.4836), DAY)
    assert csv_lines(qs)[1:] == ["1,geo:hasGeometry,geo1,2024-01-01", "geo1,geo:asWKT,POINT (8.4631 49.4836),2024-01-01"]
    assert emit_geometry_quads("relation/5", None, DAY) == []


def _by_pred(qs, name):
    return [q for q in qs if q.predicate.value == name]


def test_grid_quads_adjacency_and_hierarchy():
    n = sorted(neighbors(CELL))[0]
    qs = emit_grid_quads([CELL, n], DAY)
    assert len(_by_pred(qs, "hcf:isAdjacentTo")) == 2
    kid = sorted(children(CELL))[0]
    qs = emit_grid_quads([CELL, kid], DAY)
    assert len(_by_pred(qs, "isParentCellOf")) == 1 == len(_by_pred(qs, "isChildCellOf"))
    assert len(_by_pred(qs, "hcf:isAdjacentTo")) == 0
    single = emit_grid_quads([CELL], DAY)
    assert {q.predicate.value for q in single} == {"geo:hasGeometry", "geo:asWKT"}
    assert csv_lines(single)[1] == f"{CELL},geo:hasGeometry,geoCell{CELL},2024-01-01"


def test_grid_adjacency_symmetric_on_disk():
    cells = h3.grid_disk(CELL, 2)
    pairs = {(q.subject.value, q.object.value) for q in _by_pred(emit_grid_quads(cells, DAY), "hcf:isAdjacentTo")}
    brute = {(a, b) for a in cells for b in cells if a != b and h3.are_neighbor_cells(a, b)}
    assert pairs == brute


CAMPUS = from_wkt("POLYGON ((8.4631 49.4836, 8.461 49.486, 8.46 49.4836, 8.4631 49.4836))")


def test_relation_quads():
    m = relate(cell_boundary(CELL), CAMPUS)
    assert csv_lines(emit_relation_quads(CELL, "way/240974013", m, 2, DAY))[1:] == sorted(TABLE2[4:])
    far = from_wkt("POINT (0 0)")
    assert emit_relation_quads(CELL, "node/1", relate(cell_boundary(CELL), far), 0, DAY) == []
    # a square straddling the cell edge near (8.4535, 49.4832)
    edge = from_wkt("POLYGON ((8.452 49.482, 8.456 49.482, 8.456 49.485, 8.452 49.485, 8.452 49.482))")
    qs = emit_relation_quads(CELL, "way/2", relate(cell_boundary(CELL), edge), 2, DAY)
    assert {q.predicate.value for q in qs} == {"geo:sfIntersects", "geo:sfOverlaps"}
    assert all(q.subject.kind == "grid_cell" for q in qs)


def test_never_disjoint():
    for wkt in ["POINT (8.46 49.484)", "LINESTRING (8.44 49.48, 8.47 49.485)", "POINT (8 49)"]:
        g = from_wkt(wkt)
        qs = emit_relation_quads(CELL, "node/1", relate(cell_boundary(CELL), g), g.dimension, DAY)
        assert all("isjoint" not in q.predicate.value for q in qs)


def test_serialize_csv_and_nquads():
    assert serialize([], "csv") == b"subject,predicate,object,date\n"
    assert serialize([], "nquads") == b""
    qs = emit_geometry_quads("way/240974013", CAMPUS, DAY) + emit_tag_quads("way/7", [("name", 'A "q", b')], H, DAY)
    out = serialize(qs, "csv")
    assert out == serialize(list(reversed(qs)), "csv")
    rows = list(csv.reader(io.StringIO(out.decode())))
    assert ["7", "name", 'A "q", b', "2024-01-01"] in rows
    assert b'"A ""q"", b"' in out
    nq = serialize(qs, "nquads").decode().splitlines()
    assert len(nq) == len(qs)
    assert all(line.endswith(" <date:2024-01-01> .") for line in nq)
    assert '"A \\"q\\", b"' in serialize(qs, "nquads").decode()
    assert any("<https://www.openstreetmap.org/way/240974013>" in line for line in nq)
    with pytest.raises(ValueError):
        serialize(qs, "turtle")


def test_terms():
    assert Term(GEOMETRY, "way/1").csv() == "geo1"
    assert Term(GEOMETRY, "cell/" + CELL).csv() == "geoCell" + CELL
    with pytest.raises(ValueError):
        Term("osm_id", "")
    with pytest.raises(ValueError):
        Term("nonsense", "x")


def test_hierarchy_rejects_cycles(tmp_path):
    p = tmp_path / "h.json"
    p.write_text(json.dumps({"keys": {"amenity": ["cafe"]}, "chains": {"amenity=cafe": ["food", "cafe"]}}))
    with pytest.raises(ValueError):
        CommonTagHierarchy.load(p)


def test_hierarchy_chain():
    h = CommonTagHierarchy({"amenity": frozenset({"cafe"})}, {"amenity=cafe": ("food",)})
    qs = emit_tag_quads("node/1", [("amenity", "cafe")], h, DAY, set())
    assert csv_lines(qs)[1:] == ["1,rdf:type,cafe,2024-01-01", "cafe,rdfs:subClassOf,food,2024-01-01",
                                 "food,rdfs:subClassOf,amenity,2024-01-01"]


def test_default_hierarchy_keys():
    assert set(H.keys) == {"amenity", "building", "highway", "landuse", "natural", "leisure", "shop", "tourism",
                           "waterway", "power", "railway", "boundary", "place"}


def test_table2_end_to_end(mannheim_kg):
    lines = (mannheim_kg / "kg" / "quads.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "subject,predicate,object,date"
    for row in TABLE2:
        assert row in lines
    wkt_rows = [l for l in lines if l.startswith("geo240974013,geo:asWKT,")]
    assert wkt_rows == ['geo240974013,geo:asWKT,"POLYGON ((8.4631 49.4836, 8.461 49.486, 8.46 49.4836, 8.4631 49.4836))",2024-01-01']
    assert all(l.endswith(",2024-01-01") for l in lines[1:])
    rows = list(csv.reader(io.StringIO("\n".join(lines))))[1:]
    rel = [r for r in rows if r[1].startswith(("geo:sf", "geo:eh"))]
    assert all(len(r[0]) == 15 for r in rel)
    n_parent = sum(r[1] == "isParentCellOf" for r in rows)
    assert n_parent == sum(r[1] == "isChildCellOf" for r in rows)
