"""Cell-level operations on the hexagonal aperture-7 grid.

Index <-> coordinate math, parent/child arithmetic and neighbour traversal are
delegated to the ``h3`` bindings of the published grid specification. Cell
boundaries, areas, resolution decoding, compaction and uncompaction are
computed here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Set

import h3

from ..geometry.shapes import Polygon, orient_ring

MAX_RESOLUTION = 15
# authalic sphere radius used by the grid specification
EARTH_RADIUS_KM = 6371.007180918475

_RES_SHIFT = 52
_MODE_SHIFT = 59
_CELL_MODE = 1


class InvalidCellIndex(ValueError):
    pass


class ResolutionOutOfRange(ValueError):
    pass


class MixedResolutionInput(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GridCell:
    index: str
    resolution: int

    @classmethod
    def of(cls, index: str) -> "GridCell":
        return cls(index, cell_resolution(index))


def check_resolution(res: int) -> int:
    if not isinstance(res, int) or not 0 <= res <= MAX_RESOLUTION:
        raise ResolutionOutOfRange(f"resolution must be in [0, {MAX_RESOLUTION}], got {res!r}")
    return res


def cell_resolution(index: str) -> int:
    """Decode the resolution bit-field (bits 52-55) of a cell index."""
    try:
        value = int(index, 16)
    except (TypeError, ValueError):
        raise InvalidCellIndex(f"not a hexadecimal cell index: {index!r}") from None
    if (value >> _MODE_SHIFT) & 0xF != _CELL_MODE or not h3.is_valid_cell(index):
        raise InvalidCellIndex(f"not a valid cell index: {index!r}")
    return (value >> _RES_SHIFT) & 0xF


def _valid(index: str) -> str:
    cell_resolution(index)
    return index


def cell_center(index: str):
    """Cell centre as ``(lon, lat)``."""
    lat, lon = h3.cell_to_latlng(_valid(index))
    return (lon, lat)


def cell_boundary(index: str) -> Polygon:
    """Cell boundary as a closed counter-clockwise lon/lat polygon.

    Rings that straddle the antimeridian are unwrapped eastwards, so their
    longitudes may exceed 180.
    """
    verts = [(lon, lat) for lat, lon in h3.cell_to_boundary(_valid(index))]
    lons = [v[0] for v in verts]
    if max(lons) - min(lons) > 180.0:
        verts = [(lon + 360.0 if lon < 0 else lon, lat) for lon, lat in verts]
    ring = tuple(verts) + (verts[0],)
    return Polygon((orient_ring(ring, True),))


def is_pentagon(index: str) -> bool:
    return h3.is_pentagon(_valid(index))


def neighbors(index: str) -> Set[str]:
    """Edge-adjacent cells at the same resolution (5 for pentagons)."""
    return set(h3.grid_disk(_valid(index), 1)) - {index}


def parent(index: str) -> str:
    res = cell_resolution(index)
    if res < 1:
        raise ResolutionOutOfRange("resolution-0 cells have no parent")
    return h3.cell_to_parent(index, res - 1)


def ancestor(index: str, res: int) -> str:
    own = cell_resolution(index)
    if not 0 <= res <= own:
        raise ResolutionOutOfRange(f"ancestor resolution {res} not in [0, {own}]")
    return index if res == own else h3.cell_to_parent(index, res)


def children(index: str) -> Set[str]:
    res = cell_resolution(index)
    if res >= MAX_RESOLUTION:
        raise ResolutionOutOfRange("resolution-15 cells have no children")
    return set(h3.cell_to_children(index, res + 1))


def descendants(index: str, res: int) -> List[str]:
    own = cell_resolution(index)
    check_resolution(res)
    if res < own:
        raise ResolutionOutOfRange(f"cannot expand resolution {own} cell to {res}")
    return list(h3.cell_to_children(index, res))


def compact(cells: Iterable[str]) -> Set[str]:
    """Replace every complete sibling group by its parent, recursively."""
    current = set(cells)
    if not current:
        return set()
    resolutions = {cell_resolution(c) for c in current}
    if len(resolutions) > 1:
        raise MixedResolutionInput(f"compact needs one resolution, got {sorted(resolutions)}")
    res = resolutions.pop()
    done: Set[str] = set()
    while res > 0 and current:
        groups = {}
        for c in current:
            groups.setdefault(h3.cell_to_parent(c, res - 1), []).append(c)
        promoted = set()
        for p, kids in groups.items():
            if len(kids) == (6 if h3.is_pentagon(p) else 7):
                promoted.add(p)
            else:
                done.update(kids)
        current = promoted
        res -= 1
    return done | current


def uncompact(cells: Iterable[str], res: int) -> Set[str]:
    check_resolution(res)
    out: Set[str] = set()
    for c in cells:
        out.update(descendants(c, res))
    return out


def _unit(lon: float, lat: float):
    la, lo = math.radians(lat), math.radians(lon)
    return (math.cos(la) * math.cos(lo), math.cos(la) * math.sin(lo), math.sin(la))


def _triangle_excess(a, b, c) -> float:
    # Van Oosterom-Strackee: tan(E/2) = a.(b x c) / (1 + a.b + b.c + c.a)
    bxc = (b[1] * c[2] - b[2] * c[1], b[2] * c[0] - b[0] * c[2], b[0] * c[1] - b[1] * c[0])
    num = a[0] * bxc[0] + a[1] * bxc[1] + a[2] * bxc[2]
    dot = lambda u, v: u[0] * v[0] + u[1] * v[1] + u[2] * v[2]  # noqa: E731
    den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a)
    return 2.0 * math.atan2(num, den)


def spherical_ring_area_km2(ring) -> float:
    """Area enclosed by a lon/lat ring with great-circle edges."""
    pts = [_unit(lon, lat) for lon, lat in ring[:-1]]
    total = 0.0
    for i in range(1, len(pts) - 1):
        total += _triangle_excess(pts[0], pts[i], pts[i + 1])
    return abs(total) * EARTH_RADIUS_KM**2


def cell_area_km2(index: str) -> float:
    return spherical_ring_area_km2(cell_boundary(index).shell)


def edge_length_km(res: int) -> float:
    return h3.average_hexagon_edge_length(check_resolution(res), unit="km")
