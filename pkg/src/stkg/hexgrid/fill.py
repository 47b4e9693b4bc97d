"""Centre-containment polyfill."""
from __future__ import annotations

import math
from typing import List, Sequence, Set, Union

import h3

from ..geometry.shapes import Bbox, MultiPolygon, Polygon, bbox as geometry_bbox
from ..topo.exact import locate_in_rings
from .cells import check_resolution, edge_length_km

Region = Union[Polygon, MultiPolygon, Bbox]
_KM_PER_DEG = 111.32
_COARSE_STEPS = 2
_HALO_RINGS = 2


def bbox_polygon(b: Bbox) -> Polygon:
    x0, y0, x1, y1 = b.as_tuple()
    return Polygon((((x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)),))


class PreparedRegion:
    """Polygonal region with per-polygon bbox prefilters for point location."""

    def __init__(self, region: Region):
        if isinstance(region, Bbox):
            region = bbox_polygon(region)
        polys = [region] if isinstance(region, Polygon) else list(region.polygons)
        self.parts = [(geometry_bbox(p), p.rings) for p in polys]
        self.bbox = geometry_bbox(region)

    def covers(self, lon: float, lat: float) -> bool:
        """True when the point is inside or on the boundary of the region."""
        for box, rings in self.parts:
            if box.contains_point(lon, lat) and locate_in_rings(rings, lon, lat) != "E":
                return True
        return False


def cells_near_bbox(b: Bbox, res: int) -> Set[str]:
    """Superset of all resolution-``res`` cells whose centre lies in ``b``.

    A lattice of sample points covers the box at a coarser resolution; the
    cells hit there are widened by a halo of rings (hexagon children are not
    nested inside their parents) and expanded to ``res``.
    """
    coarse = max(0, res - _COARSE_STEPS)
    step = 0.5 * edge_length_km(coarse) / _KM_PER_DEG
    nx = max(1, math.ceil((b.max_lon - b.min_lon) / step))
    ny = max(1, math.ceil((b.max_lat - b.min_lat) / step))
    seeds = set()
    for i in range(nx + 1):
        lon = min(b.min_lon + i * step, b.max_lon)
        for j in range(ny + 1):
            lat = min(b.min_lat + j * step, b.max_lat)
            seeds.add(h3.latlng_to_cell(lat, lon, coarse))
    halo = set()
    for s in seeds:
        halo.update(h3.grid_disk(s, _HALO_RINGS))
    if coarse == res:
        return halo
    out = set()
    for c in halo:
        out.update(h3.cell_to_children(c, res))
    return out


def polyfill(region: Region, res: int) -> Set[str]:
    """All cells of resolution ``res`` whose centre lies in ``region`` (boundary included)."""
    check_resolution(res)
    prepared = region if isinstance(region, PreparedRegion) else PreparedRegion(region)
    out = set()
    b = prepared.bbox
    for c in cells_near_bbox(b, res):
        lat, lon = h3.cell_to_latlng(c)
        if b.contains_point(lon, lat) and prepared.covers(lon, lat):
            out.add(c)
    return out


def polyfill_many(regions: Sequence[Region], res: int, within: Region = None) -> Set[str]:
    """Union of polyfills, optionally restricted to centres also inside ``within``."""
    check_resolution(res)
    clip = PreparedRegion(within) if within is not None else None
    out: Set[str] = set()
    for region in regions:
        prepared = PreparedRegion(region)
        if clip is not None:
            if not prepared.bbox.intersects(clip.bbox):
                continue
            box = _intersect(prepared.bbox, clip.bbox)
        else:
            box = prepared.bbox
        for c in cells_near_bbox(box, res):
            if c in out:
                continue
            lat, lon = h3.cell_to_latlng(c)
            if not box.contains_point(lon, lat):
                continue
            if prepared.covers(lon, lat) and (clip is None or clip.covers(lon, lat)):
                out.add(c)
    return out


def _intersect(a: Bbox, b: Bbox) -> Bbox:
    return Bbox(max(a.min_lon, b.min_lon), max(a.min_lat, b.min_lat), min(a.max_lon, b.max_lon), min(a.max_lat, b.max_lat))
