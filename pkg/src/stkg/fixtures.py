"""Bundled Mannheim example and a seeded synthetic snapshot generator.

The Mannheim example holds way 240974013 (a university campus triangle)
that lies entirely inside resolution-8 cell 881fae61b9fffff, plus one
element for each of the other layers.
"""
from __future__ import annotations

import random
from pathlib import Path
from typing import List, Tuple

import h3

from .geometry.shapes import Bbox
from .osm.elements import Member, NodeElement, RelationElement, TagSet, WayElement
from .osm.pbfwrite import write_pbf
from .osm.xml import write_xml

MANNHEIM_WAY = 240974013
MANNHEIM_CELL = "881fae61b9fffff"
MANNHEIM_DATE = "2024-01-01"
SYNTHETIC_BBOX = Bbox(8.40, 49.45, 8.56, 49.55)


def mannheim_elements():
    nodes = [
        NodeElement(1, 49.4836, 8.4631, TagSet()),
        NodeElement(2, 49.4836, 8.4600, TagSet()),
        NodeElement(3, 49.4860, 8.4610, TagSet()),
        NodeElement(4, 49.4870, 8.4700, TagSet({"shop": "bakery", "name": "Bäckerei am Ring"})),
        NodeElement(5, 49.4890, 8.4680, TagSet()),
        NodeElement(6, 49.4905, 8.4720, TagSet()),
        NodeElement(7, 49.4780, 8.4550, TagSet()),
        NodeElement(8, 49.4780, 8.4580, TagSet()),
        NodeElement(9, 49.4800, 8.4580, TagSet()),
        NodeElement(10, 49.4800, 8.4550, TagSet()),
    ]
    ways = [
        WayElement(MANNHEIM_WAY, (1, 2, 3, 1), TagSet({
            "amenity": "university",
            "addr:city": "Mannheim",
            "name": "Universität Mannheim",
        })),
        WayElement(100, (5, 6), TagSet({"highway": "residential", "name": "Parkring"})),
        WayElement(101, (7, 8, 9, 10, 7), TagSet()),
    ]
    relations = [
        RelationElement(500, (Member("way", 101, "outer"),), TagSet({"type": "multipolygon", "leisure": "park"})),
        RelationElement(501, (Member("way", 100, ""), Member("node", 4, "")), TagSet({"type": "site", "name": "Quadrate"})),
    ]
    return nodes + ways + relations


def mannheim_grid_cells() -> List[str]:
    """The example cell and its six neighbours."""
    return sorted(h3.grid_disk(MANNHEIM_CELL, 1))


_VALUES = {
    "amenity": ["cafe", "school", "restaurant", "pharmacy", "parking", "university"],
    "building": ["yes", "house", "apartments", "commercial"],
    "shop": ["bakery", "supermarket", "clothes"],
    "highway": ["residential", "service", "footway", "primary"],
    "landuse": ["residential", "grass", "retail"],
    "leisure": ["park", "playground", "pitch"],
}
_FREE_KEYS = ["name", "addr:street", "addr:housenumber", "opening_hours", "surface"]


def _tags(rng: random.Random, keys) -> TagSet:
    k = rng.choice(keys)
    pairs = {k: rng.choice(_VALUES[k])}
    for fk in rng.sample(_FREE_KEYS, rng.randint(0, 2)):
        pairs[fk] = f"{fk}-{rng.randint(1, 500)}"
    return TagSet(pairs)


def synthetic_elements(n_features: int, seed: int = 0, box: Bbox = SYNTHETIC_BBOX):
    """Deterministic snapshot with ``n_features`` tagged elements inside ``box``.

    Mix: 30% feature nodes, 30% line ways, 30% area ways, 10% multipolygon
    relations with one outer and one inner ring. Untagged vertex nodes and
    member ways come on top.
    """
    rng = random.Random(seed)
    nodes, ways, rels = [], [], []
    next_node, next_way, next_rel = [1], [1], [1]

    def node(lon, lat, tags=TagSet()):
        n = NodeElement(next_node[0], round(lat, 7), round(lon, 7), tags)
        next_node[0] += 1
        nodes.append(n)
        return n.id

    def way(refs, tags=TagSet()):
        w = WayElement(next_way[0], tuple(refs), tags)
        next_way[0] += 1
        ways.append(w)
        return w.id

    def anchor(margin=0.004):
        return (rng.uniform(box.min_lon + margin, box.max_lon - margin),
                rng.uniform(box.min_lat + margin, box.max_lat - margin))

    def square(cx, cy, r):
        refs = [node(cx - r, cy - r), node(cx + r, cy - r), node(cx + r, cy + r), node(cx - r, cy + r)]
        return refs + refs[:1]

    for i in range(n_features):
        kind = i % 10
        x, y = anchor()
        if kind < 3:
            node(x, y, _tags(rng, ["amenity", "shop"]))
        elif kind < 6:
            refs = [node(x, y)]
            for _ in range(rng.randint(1, 4)):
                x += rng.uniform(-0.002, 0.002)
                y += rng.uniform(-0.0015, 0.0015)
                refs.append(node(x, y))
            way(refs, _tags(rng, ["highway"]))
        elif kind < 9:
            way(square(x, y, rng.uniform(0.0002, 0.0012)), _tags(rng, ["building", "amenity", "landuse"]))
        else:
            r = rng.uniform(0.0008, 0.002)
            outer = way(square(x, y, r))
            inner = way(square(x, y, r / 3))
            tags = _tags(rng, ["leisure", "landuse"]).as_dict()
            tags["type"] = "multipolygon"
            rels.append(RelationElement(next_rel[0], (Member("way", outer, "outer"), Member("way", inner, "inner")),
                                        TagSet(tags)))
            next_rel[0] += 1
    return nodes + ways + rels


def write_snapshot(elements, path: Path) -> Path:
    """Write ``elements`` as PBF or OSM XML depending on the file suffix."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.name.endswith(".pbf"):
        with open(path, "wb") as fh:
            write_pbf(elements, fh)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            write_xml(elements, fh)
    return path
