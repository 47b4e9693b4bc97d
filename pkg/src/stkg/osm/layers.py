"""Layer classification and snapshot-date extraction."""
from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Optional

LAYERS = ("points", "lines", "multilinestrings", "multipolygons", "other_relations")

# keys that make a closed way an area (the conventional OSM export default)
DEFAULT_AREA_KEYS = frozenset(
    {
        "aeroway", "amenity", "boundary", "building", "craft", "geological", "historic",
        "landuse", "leisure", "military", "natural", "office", "place", "shop", "sport", "tourism",
    }
)
AREA_RELATION_TYPES = frozenset({"multipolygon", "boundary"})
ROUTE_RELATION_TYPES = frozenset({"route"})
# tags that do not make a node a feature on its own
UNINTERESTING_NODE_KEYS = frozenset({"created_by", "source", "converted_by", "fixme", "FIXME", "note"})

_DATE_TOKEN = re.compile(r"-(\d{2})(\d{2})(\d{2})(?=\.)")


class NoDateFound(ValueError):
    pass


@dataclass(frozen=True)
class SnapshotMeta:
    source_path: str
    snapshot_date: date
    region_label: str


def classify_layer(element, geometry_kind: Optional[str]) -> str:
    """Map an element and its assembled geometry kind to one of :data:`LAYERS`."""
    if element.kind == "node":
        return "points"
    if element.kind == "way":
        return "multipolygons" if geometry_kind == "Polygon" else "lines"
    if geometry_kind == "MultiPolygon":
        return "multipolygons"
    if geometry_kind == "MultiLineString":
        return "multilinestrings"
    return "other_relations"


def is_feature_node(node) -> bool:
    return any(k not in UNINTERESTING_NODE_KEYS for k, _ in node.tags)


def extract_snapshot_date(filename: str, override: Optional[date] = None) -> date:
    """Snapshot date from an explicit override or a ``-YYMMDD.`` filename token."""
    if override is not None:
        return override if isinstance(override, date) else date.fromisoformat(str(override))
    name = Path(filename).name
    for m in reversed(list(_DATE_TOKEN.finditer(name))):
        yy, mm, dd = (int(g) for g in m.groups())
        try:
            return date(2000 + yy, mm, dd)
        except ValueError:
            continue
    raise NoDateFound(f"no -YYMMDD date token in {name!r} and no override given")


def region_label(filename: str) -> str:
    name = Path(filename).name
    base = name.split(".", 1)[0]
    return _DATE_TOKEN.sub("", base + ".").rstrip(".") or base


def snapshot_meta(path: str, override: Optional[date] = None) -> SnapshotMeta:
    return SnapshotMeta(str(path), extract_snapshot_date(path, override), region_label(path))
