"""Explicit geometry assembly for OSM elements.

Nodes become points. Ways become linestrings, or polygons when closed and
area-indicating. Multipolygon/boundary relations are stitched into rings from
their member ways; route relations become multilinestrings. Member relations
are followed one level deep.
"""
from __future__ import annotations

import logging
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..osm.elements import Element, RelationElement, WayElement
from ..osm.layers import AREA_RELATION_TYPES, DEFAULT_AREA_KEYS, ROUTE_RELATION_TYPES
from ..osm.nodeindex import DanglingNodeRef
from ..topo.exact import locate_in_rings
from .shapes import (
    Geometry,
    LineString,
    MultiLineString,
    MultiPolygon,
    Point,
    Polygon,
    Ring,
    orient_ring,
    signed_area,
)

log = logging.getLogger(__name__)

NodeLocator = Callable[[int], Tuple[float, float]]


class GeometrySkipped(Exception):
    """Element has no buildable geometry; callers log and continue."""

    reason = "skipped"


class UnclosedRing(GeometrySkipped):
    reason = "unclosed_ring"


class DanglingWayRef(GeometrySkipped):
    reason = "dangling_way_ref"


class NoGeometry(GeometrySkipped):
    reason = "no_geometry"


def is_area_way(way: WayElement, area_keys: FrozenSet[str] = DEFAULT_AREA_KEYS) -> bool:
    if not way.is_closed or len(way.node_refs) < 4:
        return False
    area = way.tags.get("area")
    if area == "no":
        return False
    if area == "yes":
        return True
    return any(k in area_keys for k, _ in way.tags)


def _locate_all(refs: Sequence[int], locate: NodeLocator) -> List[Tuple[float, float]]:
    many = getattr(locate, "lookup_many", None)
    if many is not None:
        return many(refs)
    return [locate(r) for r in refs]


def way_geometry(way: WayElement, locate: NodeLocator, area_keys=DEFAULT_AREA_KEYS) -> Geometry:
    coords = _locate_all(way.node_refs, locate)
    if is_area_way(way, area_keys):
        return Polygon((orient_ring(tuple(coords), True),))
    return LineString(tuple(coords))


def canonical_ring(ring: Ring, ccw: bool) -> Ring:
    """Orient ``ring`` and rotate it to start at its smallest vertex."""
    body = list(orient_ring(ring, ccw)[:-1])
    i = min(range(len(body)), key=lambda k: body[k])
    body = body[i:] + body[:i]
    return tuple(body) + (body[0],)


def stitch_rings(ways: Sequence[Tuple[Tuple[int, ...], str]], relation_id: int = 0) -> List[Tuple[Tuple[int, ...], str]]:
    """Join way node-id sequences end to end into closed rings.

    Each input is ``(node_ids, role)``; a ring's role is the first non-empty
    role among its pieces.
    """
    pool = [(tuple(ids), role) for ids, role in ways if len(ids) >= 2]
    rings = []
    while pool:
        ids, role = pool.pop(0)
        cur = list(ids)
        while cur[0] != cur[-1]:
            for k, (cand, crole) in enumerate(pool):
                if cand[0] == cur[-1]:
                    cur.extend(cand[1:])
                elif cand[-1] == cur[-1]:
                    cur.extend(reversed(cand[:-1]))
                elif cand[-1] == cur[0]:
                    cur[:0] = cand[:-1]
                elif cand[0] == cur[0]:
                    cur[:0] = reversed(cand[1:])
                else:
                    continue
                role = role or crole
                pool.pop(k)
                break
            else:
                raise UnclosedRing(f"relation {relation_id}: ring starting at node {cur[0]} does not close")
        if len(cur) < 4:
            raise UnclosedRing(f"relation {relation_id}: degenerate ring of {len(cur)} nodes")
        rings.append((tuple(cur), role))
    return rings


def _inside(inner: Ring, outer: Ring) -> bool:
    for a, b in zip(inner, inner[1:]):
        for x, y in (a, ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)):
            loc = locate_in_rings([outer], x, y)
            if loc != "B":
                return loc == "I"
    return False


def assemble_multipolygon(rings: Sequence[Tuple[Ring, str]]) -> MultiPolygon:
    """Group coordinate rings into polygons: role first, then containment depth."""
    n = len(rings)
    coords = [r for r, _ in rings]
    contains = [[i != j and _inside(coords[i], coords[j]) for j in range(n)] for i in range(n)]
    depth = [sum(contains[i]) for i in range(n)]
    is_hole = []
    for i, (_, role) in enumerate(rings):
        if role == "inner":
            is_hole.append(True)
        elif role == "outer":
            is_hole.append(False)
        else:
            is_hole.append(depth[i] % 2 == 1)
    shells = [i for i in range(n) if not is_hole[i]]
    holes: Dict[int, List[int]] = {i: [] for i in shells}
    for i in range(n):
        if not is_hole[i]:
            continue
        owners = [j for j in shells if contains[i][j]]
        if not owners:
            log.warning("inner ring without enclosing outer ring; treating it as an outer ring")
            shells.append(i)
            holes[i] = []
            continue
        owner = min(owners, key=lambda j: abs(signed_area(coords[j])))
        holes[owner].append(i)
    polys = []
    for s in shells:
        shell = canonical_ring(coords[s], True)
        hs = sorted(canonical_ring(coords[h], False) for h in holes[s])
        polys.append(Polygon((shell,) + tuple(hs)))
    polys.sort(key=lambda p: p.rings)
    return MultiPolygon(tuple(polys))


WayLookup = Callable[[int], Optional[Tuple[int, ...]]]
RelationLookup = Callable[[int], Optional[RelationElement]]


def _member_ways(rel: RelationElement, ways: WayLookup, relations: Optional[RelationLookup], roles=None):
    out = []
    for m in rel.members:
        if m.type == "way":
            if roles is not None and m.role not in roles:
                continue
            refs = ways(m.ref)
            if refs is None:
                raise DanglingWayRef(f"relation {rel.id}: way {m.ref} not present")
            out.append((refs, m.role))
        elif m.type == "relation" and relations is not None:
            sub = relations(m.ref)
            if sub is None:
                continue
            for sm in sub.members:
                # one level only: relations inside the sub-relation are ignored
                if sm.type == "way" and (roles is None or sm.role in roles):
                    refs = ways(sm.ref)
                    if refs is None:
                        raise DanglingWayRef(f"relation {rel.id}: way {sm.ref} not present")
                    out.append((refs, sm.role))
    return out


def relation_geometry(rel: RelationElement, locate: NodeLocator, ways: WayLookup,
                      relations: Optional[RelationLookup] = None) -> Geometry:
    rtype = rel.tags.get("type")
    if rtype in AREA_RELATION_TYPES:
        members = _member_ways(rel, ways, relations, roles=("outer", "inner", ""))
        if not members:
            raise NoGeometry(f"relation {rel.id}: no ring members")
        rings = stitch_rings(members, rel.id)
        return assemble_multipolygon([(tuple(_locate_all(ids, locate)), role) for ids, role in rings])
    if rtype in ROUTE_RELATION_TYPES:
        members = _member_ways(rel, ways, relations)
        if not members:
            raise NoGeometry(f"relation {rel.id}: no way members")
        return MultiLineString(tuple(LineString(tuple(_locate_all(ids, locate))) for ids, _ in members))
    raise NoGeometry(f"relation {rel.id}: type {rtype!r} has no geometry")


def build_geometry(element: Element, locate: NodeLocator, ways: Optional[WayLookup] = None,
                   relations: Optional[RelationLookup] = None, area_keys=DEFAULT_AREA_KEYS) -> Geometry:
    """Construct the explicit geometry of ``element``.

    Raises :class:`DanglingNodeRef` for unresolvable nodes and a
    :class:`GeometrySkipped` subclass when no geometry can be built.
    """
    if element.kind == "node":
        return Point(element.lon, element.lat)
    if element.kind == "way":
        return way_geometry(element, locate, area_keys)
    if ways is None:
        raise NoGeometry(f"relation {element.id}: no way lookup available")
    return relation_geometry(element, locate, ways, relations)


__all__ = [
    "DanglingNodeRef",
    "DanglingWayRef",
    "GeometrySkipped",
    "NoGeometry",
    "UnclosedRing",
    "assemble_multipolygon",
    "build_geometry",
    "canonical_ring",
    "is_area_way",
    "stitch_rings",
]
