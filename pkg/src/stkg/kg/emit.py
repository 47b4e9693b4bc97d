"""Quad emission for the four graph parts: tags, geometries, grid cells, grid-geometry relations."""
from __future__ import annotations

from datetime import date
from typing import Callable, Iterable, List, Optional, Set

from ..geometry.shapes import Geometry
from ..geometry.wkt import to_wkt
from ..hexgrid.cells import cell_boundary, cell_resolution, neighbors, parent
from ..topo.matrix import De9imMatrix
from ..topo.predicates import all_predicates
from .hierarchy import CommonTagHierarchy
from .terms import (
    AS_WKT,
    GEOMETRY,
    HAS_GEOMETRY,
    IS_ADJACENT_TO,
    IS_CHILD_CELL_OF,
    IS_PARENT_CELL_OF,
    KEY_CLASS,
    RDF_TYPE,
    SUBCLASS_OF,
    TAG_CLASS,
    WKT_LITERAL,
    Quad,
    Term,
    cell,
    literal,
    osm,
    pred,
)

# predicate name -> GeoSPARQL property, in the order they are listed for the ontology
RELATION_PROPERTIES = {
    "contains": "geo:sfContains",
    "crosses": "geo:sfCrosses",
    "equals": "geo:sfEquals",
    "overlaps": "geo:sfOverlaps",
    "touches": "geo:sfTouches",
    "within": "geo:sfWithin",
    "covers": "geo:ehCovers",
    "coveredBy": "geo:ehCoveredBy",
    "intersects": "geo:sfIntersects",
}
CELL_DIMENSION = 2


def emit_tag_quads(typed_id: str, tags, hierarchy: CommonTagHierarchy, day: date,
                   seen: Optional[Set[Quad]] = None) -> List[Quad]:
    """Common tags become ``rdf:type`` plus subclass edges; other tags become key/value quads.

    Subclass edges are emitted once per ``seen`` set (one per run and date).
    """
    out = []
    subject = osm(typed_id)
    for k, v in tags:
        if hierarchy.accepts(k, v):
            out.append(Quad(subject, RDF_TYPE, Term(TAG_CLASS, v, k), day))
            for sub, sup in hierarchy.superclass_edges(k, v):
                sup_term = Term(KEY_CLASS, sup) if sup == k else Term(TAG_CLASS, sup, k)
                sub_term = Term(TAG_CLASS, sub, k)
                q = Quad(sub_term, SUBCLASS_OF, sup_term, day)
                if seen is None or q not in seen:
                    if seen is not None:
                        seen.add(q)
                    out.append(q)
        else:
            out.append(Quad(subject, pred(k), literal(v), day))
    return out


def emit_geometry_quads(typed_id: str, geometry: Optional[Geometry], day: date, wkt: Optional[str] = None) -> List[Quad]:
    if geometry is None and wkt is None:
        return []
    node = Term(GEOMETRY, typed_id)
    text = wkt if wkt is not None else to_wkt(geometry)
    return [
        Quad(osm(typed_id), HAS_GEOMETRY, node, day),
        Quad(node, AS_WKT, literal(text, WKT_LITERAL), day),
    ]


def emit_grid_quads(cells: Iterable[str], day: date, boundary_wkt: Optional[Callable[[str], str]] = None) -> List[Quad]:
    """Geometry quads per cell, adjacency within the set, and parent/child pairs within the set."""
    cells = sorted(set(cells))
    members = set(cells)
    wkt_of = boundary_wkt or (lambda c: to_wkt(cell_boundary(c)))
    out = []
    for c in cells:
        node = Term(GEOMETRY, "cell/" + c)
        out.append(Quad(cell(c), HAS_GEOMETRY, node, day))
        out.append(Quad(node, AS_WKT, literal(wkt_of(c), WKT_LITERAL), day))
        for n in sorted(neighbors(c) & members):
            out.append(Quad(cell(c), IS_ADJACENT_TO, cell(n), day))
        if cell_resolution(c) > 0:
            p = parent(c)
            if p in members:
                out.append(Quad(cell(p), IS_PARENT_CELL_OF, cell(c), day))
                out.append(Quad(cell(c), IS_CHILD_CELL_OF, cell(p), day))
    return out


def emit_relation_quads(cell_index: str, typed_id: str, matrix: De9imMatrix, geometry_dimension: int,
                        day: date) -> List[Quad]:
    """One quad per predicate that holds with the cell as first and the OSM geometry as second operand."""
    holds = all_predicates(matrix, CELL_DIMENSION, geometry_dimension)
    out = []
    for name, prop in RELATION_PROPERTIES.items():
        if holds.get(name):
            out.append(Quad(cell(cell_index), pred(prop), osm(typed_id), day))
    return out
