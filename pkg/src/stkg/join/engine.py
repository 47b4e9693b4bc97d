"""Partitioned grid x geometry spatial join.

Candidate cells come from a sampling prefilter, pairs are grouped by the
coarse ancestor of their cell, and each partition runs the exact relate in
a worker. Results are merged and sorted, so the output does not depend on
the worker count.
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from multiprocessing import get_context
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import h3

from ..geometry.shapes import (
    Bbox,
    Geometry,
    LineString,
    MultiLineString,
    MultiPoint,
    MultiPolygon,
    Point,
    Polygon,
    bbox as geometry_bbox,
)
from ..hexgrid.cells import ancestor, cell_boundary, cell_resolution, check_resolution, edge_length_km
from ..hexgrid.fill import polyfill
from ..topo.matrix import De9imMatrix
from ..topo.relate import dimension_of, relate

log = logging.getLogger(__name__)

PARTITION_STEPS = 3
PAIRS_PER_TASK = 4096
_KM_PER_DEG = 111.32
# sample spacing as a fraction of the edge length; cells more than one ring
# apart are at least one edge length apart, so a quarter edge is safe
_SAMPLE_FRACTION = 0.25
_MAX_LATTICE = 4096

JoinRecord = Tuple[str, str, De9imMatrix, int]  # cell, osm id, matrix, geometry dimension
SkipRecord = Dict[str, str]


@dataclass(frozen=True)
class JoinConfig:
    resolution: int = 8
    workers: int = 1
    chunk_size: int = 256

    def __post_init__(self):
        check_resolution(self.resolution)
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


def partition_key(cell: str, target_resolution: int) -> str:
    key_res = max(0, target_resolution - PARTITION_STEPS)
    return ancestor(cell, min(key_res, cell_resolution(cell)))


def _linework(g: Geometry) -> Iterator[Sequence[Tuple[float, float]]]:
    if isinstance(g, Point):
        yield ((g.x, g.y),)
    elif isinstance(g, MultiPoint):
        for p in g.points:
            yield ((p.x, p.y),)
    elif isinstance(g, LineString):
        yield g.coords
    elif isinstance(g, MultiLineString):
        for line in g.lines:
            yield line.coords
    elif isinstance(g, Polygon):
        yield from g.rings
    elif isinstance(g, MultiPolygon):
        for p in g.polygons:
            yield from p.rings
    else:
        raise TypeError(f"unsupported geometry {type(g).__name__}")


def sample_cells(g: Geometry, res: int) -> Set[str]:
    """Cells hit by the vertices and densely sampled segment points of ``g``."""
    step = _SAMPLE_FRACTION * edge_length_km(res) / _KM_PER_DEG
    out = set()
    for coords in _linework(g):
        x0, y0 = coords[0]
        out.add(h3.latlng_to_cell(y0, x0, res))
        for x1, y1 in coords[1:]:
            n = max(1, math.ceil(max(abs(x1 - x0), abs(y1 - y0)) / step))
            for i in range(1, n + 1):
                t = i / n
                out.add(h3.latlng_to_cell(y0 + t * (y1 - y0), x0 + t * (x1 - x0), res))
            x0, y0 = x1, y1
    return out


def _lattice_cells(box: Bbox, res: int, step: float) -> Set[str]:
    nx = math.ceil((box.max_lon - box.min_lon) / step)
    ny = math.ceil((box.max_lat - box.min_lat) / step)
    out = set()
    for i in range(nx + 1):
        lon = min(box.min_lon + i * step, box.max_lon)
        for j in range(ny + 1):
            out.add(h3.latlng_to_cell(min(box.min_lat + j * step, box.max_lat), lon, res))
    return out


def candidates_at(g: Geometry, res: int) -> Set[str]:
    """Resolution-``res`` superset of the cells whose relate with ``g`` is non-disjoint.

    Sampled linework cells plus, for areas, the cells lying in the interior:
    a lattice over the bbox when that is small, otherwise every cell centred
    inside. The union is widened by one neighbour ring to absorb the
    difference between planar cell outlines and the grid's own point
    assignment.
    """
    seeds = sample_cells(g, res)
    if isinstance(g, (Polygon, MultiPolygon)):
        box = geometry_bbox(g)
        step = _SAMPLE_FRACTION * edge_length_km(res) / _KM_PER_DEG
        n = math.ceil((box.max_lon - box.min_lon) / step + 1) * math.ceil((box.max_lat - box.min_lat) / step + 1)
        seeds |= _lattice_cells(box, res, step) if n <= _MAX_LATTICE else polyfill(g, res)
    out = set()
    for s in seeds:
        out.update(h3.grid_disk(s, 1))
    return out


def candidates(g: Geometry, grid: "GridIndex") -> Set[str]:
    """Grid cells (of any resolution present in the grid) that may intersect ``g``.

    Cells whose bbox misses the geometry's bbox are dropped.
    """
    box = geometry_bbox(g)
    out = set()
    for res in grid.resolutions:
        out.update(c for c in candidates_at(g, res) if c in grid.cells and grid.bbox(c).intersects(box))
    return out


class GridIndex:
    """Cell set with cached boundaries and bboxes; accepts compacted, mixed-resolution grids."""

    def __init__(self, cells: Iterable[str]):
        self.cells = frozenset(cells)
        self.resolutions = sorted({cell_resolution(c) for c in self.cells})
        self._boxes: Dict[str, Bbox] = {}

    def __len__(self):
        return len(self.cells)

    def bbox(self, c: str) -> Bbox:
        b = self._boxes.get(c)
        if b is None:
            b = self._boxes[c] = geometry_bbox(cell_boundary(c))
        return b

    @property
    def target_resolution(self) -> int:
        return self.resolutions[-1] if self.resolutions else 0


def _candidate_pairs(chunk: Sequence[Tuple[str, Geometry]], grid: GridIndex):
    pairs, skips = [], []
    for osm_id, g in chunk:
        try:
            for c in candidates(g, grid):
                pairs.append((c, osm_id))
        except Exception as exc:  # malformed geometry should not abort the run
            skips.append({"id": osm_id, "reason": f"prefilter: {exc}"})
    return pairs, skips


def _relate_partition(task) -> Tuple[List[JoinRecord], List[SkipRecord]]:
    pairs, geometries = task
    boundaries = {}
    out, skips = [], []
    for c, osm_id in pairs:
        poly = boundaries.get(c)
        if poly is None:
            poly = boundaries[c] = cell_boundary(c)
        g = geometries[osm_id]
        try:
            m = relate(poly, g)
        except Exception as exc:
            skips.append({"id": osm_id, "reason": f"relate with {c}: {exc}"})
            continue
        if _intersects(m):
            out.append((c, osm_id, m, dimension_of(g)))
    return out, skips


def _intersects(m: De9imMatrix) -> bool:
    (ii, ib, _), (bi, bb, _), _ = m.cells
    return max(ii, ib, bi, bb) >= 0


# worker-side state for the prefilter stage, installed once per process
_WORKER_GRID: Optional[GridIndex] = None


def _init_worker(cells):
    global _WORKER_GRID
    _WORKER_GRID = GridIndex(cells)


def _prefilter_task(chunk):
    return _candidate_pairs(chunk, _WORKER_GRID)


def _chunks(seq, size):
    for i in range(0, len(seq), size):
        yield seq[i:i + size]


def build_partitions(pairs: Iterable[Tuple[str, str]], geometries: Dict[str, Geometry], target_resolution: int):
    """Group (cell, id) pairs by coarse key; each geometry is replicated into every task it touches."""
    grouped = defaultdict(set)
    for c, osm_id in pairs:
        grouped[partition_key(c, target_resolution)].add((c, osm_id))
    tasks = []
    for key in sorted(grouped):
        ps = sorted(grouped[key])
        # large partitions are cut into slices so workers stay balanced
        for part in _chunks(ps, PAIRS_PER_TASK):
            tasks.append((part, {osm_id: geometries[osm_id] for _, osm_id in part}))
    return tasks


def run_join(elements: Iterable[Tuple[str, Geometry]], grid: Iterable[str],
             config: JoinConfig = JoinConfig()) -> Tuple[List[JoinRecord], List[SkipRecord]]:
    """Relate every grid cell with every geometry it may touch.

    Returns one record per intersecting (cell, id) pair sorted by cell then
    id, and skip records for geometries that could not be processed.
    """
    index = grid if isinstance(grid, GridIndex) else GridIndex(grid)
    elements = sorted(elements, key=lambda e: e[0])
    geometries = dict(elements)
    if len(geometries) != len(elements):
        raise ValueError("duplicate element ids in join input")
    if not elements or not len(index):
        return [], []
    target = max(config.resolution, index.target_resolution)
    chunks = list(_chunks(elements, config.chunk_size))
    if config.workers == 1:
        pre = [_candidate_pairs(ch, index) for ch in chunks]
    else:
        ctx = get_context("fork")
        with ctx.Pool(config.workers, initializer=_init_worker, initargs=(index.cells,)) as pool:
            pre = pool.map(_prefilter_task, chunks)
    pairs = [p for ps, _ in pre for p in ps]
    skips = [s for _, ss in pre for s in ss]
    tasks = build_partitions(pairs, geometries, target)
    log.info("join: %d candidate pairs in %d tasks", len(pairs), len(tasks))
    if config.workers == 1:
        results = [_relate_partition(t) for t in tasks]
    else:
        with get_context("fork").Pool(config.workers) as pool:
            results = pool.map(_relate_partition, tasks, chunksize=max(1, len(tasks) // (4 * config.workers)))
    seen = set()
    records = []
    for recs, ss in results:
        skips.extend(ss)
        for r in recs:
            if (r[0], r[1]) not in seen:
                seen.add((r[0], r[1]))
                records.append(r)
    records.sort(key=lambda r: (r[0], r[1]))
    skips.sort(key=lambda s: (s["id"], s["reason"]))
    return records, skips


def exhaustive_join(elements: Iterable[Tuple[str, Geometry]], grid: Iterable[str]) -> List[JoinRecord]:
    """All-pairs relate without any prefilter; the reference for the partitioned join."""
    out = []
    cells = sorted(set(grid))
    polys = {c: cell_boundary(c) for c in cells}
    for osm_id, g in sorted(elements, key=lambda e: e[0]):
        for c in cells:
            m = relate(polys[c], g)
            if _intersects(m):
                out.append((c, osm_id, m, dimension_of(g)))
    out.sort(key=lambda r: (r[0], r[1]))
    return out
