"""OSM preparation: snapshot files -> per-layer element files with WKT and geohash."""
from __future__ import annotations

import csv
import json
import logging
import os
import shutil
import tempfile
from pathlib import Path
from typing import Dict, List, Optional

from ..geometry.build import GeometrySkipped, NoGeometry, build_geometry
from ..geometry.shapes import bbox as geometry_bbox
from ..geometry.wkt import to_wkt
from ..join.geohash import geohash_encode
from ..osm import parse_file, typed_id
from ..osm.layers import LAYERS, classify_layer, is_feature_node, snapshot_meta
from ..osm.nodeindex import DanglingNodeRef, NodeIndex, build_node_index

log = logging.getLogger(__name__)

ELEMENT_COLUMNS = ("osm_id", "layer", "wkt", "geohash", "date", "tags")
SKIP_LOG = "skipped.jsonl"


def snapshot_dir_name(meta) -> str:
    return f"{meta.region_label}-{meta.snapshot_date.isoformat()}"


def _tags_json(tags) -> str:
    return json.dumps([list(t) for t in tags], ensure_ascii=False, separators=(",", ":"))


def prepare_snapshot(path: Path, out_root: Path, date_override=None, geohash_precision: int = 7) -> Path:
    """Two passes over one snapshot; writes five layer files and a skip log.

    Pass one indexes node coordinates and keeps ways and relations for
    relation assembly; pass two builds geometries. Output replaces any
    previous directory for the same snapshot.
    """
    meta = snapshot_meta(str(path), date_override)
    day = meta.snapshot_date.isoformat()
    ways: Dict[int, object] = {}
    relations: Dict[int, object] = {}
    rows: Dict[str, List[tuple]] = {layer: [] for layer in LAYERS}
    skips = []
    with tempfile.TemporaryDirectory(prefix="stkg-nodes-") as tmp:
        nodes = []

        def node_stream():
            for el in parse_file(path):
                if el.kind == "node":
                    if is_feature_node(el):
                        nodes.append(el)
                    yield el.id, el.lat, el.lon
                elif el.kind == "way":
                    ways[el.id] = el
                else:
                    relations[el.id] = el

        index_path = Path(tmp) / "nodes.bin"
        build_node_index(node_stream(), index_path)
        index = NodeIndex(index_path)
        try:
            def way_refs(way_id):
                w = ways.get(way_id)
                return w.node_refs if w is not None else None

            elements = nodes + [w for w in ways.values() if w.tags] + list(relations.values())
            for el in elements:
                tid = typed_id(el)
                try:
                    g = build_geometry(el, index, way_refs, relations.get)
                except NoGeometry:
                    g = None
                except (GeometrySkipped, DanglingNodeRef) as exc:
                    skips.append({"id": tid, "reason": f"{type(exc).__name__}: {exc}"})
                    continue
                layer = classify_layer(el, g.kind if g is not None else None)
                if g is None:
                    wkt = gh = ""
                else:
                    wkt = to_wkt(g)
                    lon, lat = geometry_bbox(g).center
                    gh = geohash_encode(lat, lon, geohash_precision)
                rows[layer].append((tid, layer, wkt, gh, day, _tags_json(el.tags)))
        finally:
            index.close()

    target = out_root / snapshot_dir_name(meta)
    staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=out_root))
    try:
        for layer in LAYERS:
            with open(staging / f"{layer}.csv", "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(ELEMENT_COLUMNS)
                w.writerows(sorted(rows[layer], key=lambda r: (r[3], r[0])))
        with open(staging / SKIP_LOG, "w", encoding="utf-8") as fh:
            for s in sorted(skips, key=lambda s: s["id"]):
                fh.write(json.dumps(s, sort_keys=True) + "\n")
        if target.exists():
            shutil.rmtree(target)
        os.replace(staging, target)
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    log.info("%s: %s", target.name, {k: len(v) for k, v in rows.items()} | {"skipped": len(skips)})
    return target


def prepare_osm(inputs, out_root: Path, date_override=None, geohash_precision: int = 7) -> List[Path]:
    out_root = Path(out_root)
    out_root.mkdir(parents=True, exist_ok=True)
    return [prepare_snapshot(Path(p), out_root, date_override, geohash_precision) for p in inputs]


def snapshot_dirs(osm_root: Path) -> List[Path]:
    """Snapshot directories that hold every layer file."""
    if not osm_root.is_dir():
        return []
    return sorted(d for d in osm_root.iterdir()
                  if d.is_dir() and not d.name.startswith(".") and all((d / f"{l}.csv").is_file() for l in LAYERS))


def read_elements(snapshot: Path):
    """Yield element rows as dicts across all layer files of a snapshot."""
    for layer in LAYERS:
        with open(snapshot / f"{layer}.csv", newline="", encoding="utf-8") as fh:
            yield from csv.DictReader(fh)
