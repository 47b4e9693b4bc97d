"""Grid construction: world map x region bbox -> (compacted) cell set."""
from __future__ import annotations

import csv
import json
import logging
import urllib.parse
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..geometry.shapes import Bbox, MultiPolygon, Polygon
from ..geometry.wkt import from_wkt, to_wkt
from .cells import cell_boundary, cell_resolution, check_resolution, compact
from .fill import polyfill_many

log = logging.getLogger(__name__)

DEFAULT_WORLD_MAP = Path(__file__).with_name("data") / "world_lowres.csv"


class GeocoderUnavailable(RuntimeError):
    pass


class InvalidRegion(ValueError):
    pass


@dataclass
class GridConfig:
    resolution: int = 8
    compact: bool = False
    region: Optional[Union[str, Bbox]] = None
    world_map_path: Path = DEFAULT_WORLD_MAP

    def __post_init__(self):
        check_resolution(self.resolution)
        self.world_map_path = Path(self.world_map_path)


Geocoder = Callable[[str], Bbox]


class NominatimGeocoder:
    """Resolve a region name to its bounding box through a Nominatim-style search API."""

    def __init__(self, base_url: str = "https://nominatim.openstreetmap.org", timeout: float = 10.0,
                 user_agent: str = "stkg/0.1"):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.user_agent = user_agent

    def query_url(self, name: str) -> str:
        q = urllib.parse.urlencode({"q": name, "format": "json", "limit": 1})
        return f"{self.base_url}/search?{q}"

    @staticmethod
    def parse_response(payload) -> Bbox:
        if not payload:
            raise InvalidRegion("geocoder returned no match")
        south, north, west, east = (float(v) for v in payload[0]["boundingbox"])
        return Bbox(west, south, east, north)

    def __call__(self, name: str) -> Bbox:
        req = urllib.request.Request(self.query_url(name), headers={"User-Agent": self.user_agent})
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                payload = json.load(resp)
        except (OSError, ValueError) as exc:
            raise GeocoderUnavailable(f"geocoder request failed: {exc}") from exc
        return self.parse_response(payload)


def parse_bbox(text: Union[str, Sequence[float]]) -> Bbox:
    """Accepts ``"minLon,minLat,maxLon,maxLat"`` or a 4-sequence (TOML arrays)."""
    parts = text.split(",") if isinstance(text, str) else list(text)
    try:
        vals = [float(v) for v in parts]
    except (TypeError, ValueError):
        raise InvalidRegion(f"bbox must be four numbers: {text!r}") from None
    if len(vals) != 4:
        raise InvalidRegion(f"bbox must be minLon,minLat,maxLon,maxLat: {text!r}")
    x0, y0, x1, y1 = vals
    if not (-180 <= x0 <= x1 <= 180 and -90 <= y0 <= y1 <= 90):
        raise InvalidRegion(f"bbox out of range or inverted: {text!r}")
    return Bbox(x0, y0, x1, y1)


def load_world_map(path: Path = DEFAULT_WORLD_MAP) -> List[Tuple[str, Union[Polygon, MultiPolygon]]]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append((row["name"], from_wkt(row["wkt"])))
    return out


def resolve_region(region, geocoder: Optional[Geocoder]) -> Optional[Bbox]:
    if region is None or isinstance(region, Bbox):
        return region
    if geocoder is None:
        raise GeocoderUnavailable(f"region {region!r} needs a geocoder; pass an explicit bbox instead")
    return geocoder(region)


def build_grid(config: GridConfig, geocoder: Optional[Geocoder] = None) -> List[Tuple[str, str, int]]:
    """Cells of the world map inside the configured region, as sorted ``(index, wkt, res)`` records."""
    box = resolve_region(config.region, geocoder)
    world = [g for _, g in load_world_map(config.world_map_path)]
    cells = polyfill_many(world, config.resolution, within=box)
    log.info("polyfill produced %d cells at resolution %d", len(cells), config.resolution)
    if config.compact:
        cells = compact(cells)
        log.info("compacted to %d cells", len(cells))
    return [(c, to_wkt(cell_boundary(c)), cell_resolution(c)) for c in sorted(cells)]


def write_grid(records: Iterable[Tuple[str, str, int]], path: Path) -> int:
    n = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["cell_index", "wkt", "resolution"])
        for rec in sorted(records):
            w.writerow(rec)
            n += 1
    return n


def read_grid(path: Path) -> Iterator[Tuple[str, str, int]]:
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            yield row["cell_index"], row["wkt"], int(row["resolution"])
