"""Graph construction from prepared element files and a grid file."""
from __future__ import annotations

import json
import logging
import os
import tempfile
from collections import defaultdict
from datetime import date
from pathlib import Path
from typing import Dict, List, Set

from ..geometry.wkt import from_wkt
from ..hexgrid.grid import read_grid
from ..join.engine import GridIndex, JoinConfig, run_join
from ..kg.emit import emit_geometry_quads, emit_grid_quads, emit_relation_quads, emit_tag_quads
from ..kg.hierarchy import CommonTagHierarchy
from ..kg.serialize import write_quads
from ..kg.terms import Quad
from .prepare import read_elements, snapshot_dirs

log = logging.getLogger(__name__)

OUTPUT_NAMES = {"csv": "quads.csv", "nquads": "quads.nq"}
JOIN_SKIP_LOG = "join_skipped.jsonl"


class MissingIntermediates(FileNotFoundError):
    pass


def check_inputs(osm_root: Path, grid_path: Path) -> List[Path]:
    snapshots = snapshot_dirs(osm_root)
    if not snapshots:
        raise MissingIntermediates(f"no prepared snapshots under {osm_root}; run prepare-osm first")
    if not grid_path.is_file():
        raise MissingIntermediates(f"grid file {grid_path} not found; run build-grid first")
    return snapshots


def build_quads(snapshots: List[Path], grid_path: Path, hierarchy: CommonTagHierarchy,
                workers: int = 1) -> tuple:
    """All quads for the given snapshots, plus join skip records."""
    grid_rows = list(read_grid(grid_path))
    boundary = {c: wkt for c, wkt, _ in grid_rows}
    index = GridIndex(boundary)
    quads: Set[Quad] = set()
    skips = []
    by_date: Dict[date, List[Path]] = defaultdict(list)
    for snap in snapshots:
        by_date_rows = defaultdict(list)
        for row in read_elements(snap):
            by_date_rows[date.fromisoformat(row["date"])].append(row)
        for day, rows in by_date_rows.items():
            by_date[day].append(snap)
            seen: Set[Quad] = set()
            geoms = []
            for row in rows:
                tid = row["osm_id"]
                quads.update(emit_tag_quads(tid, json.loads(row["tags"]), hierarchy, day, seen))
                if row["wkt"]:
                    g = from_wkt(row["wkt"])
                    quads.update(emit_geometry_quads(tid, g, day, wkt=row["wkt"]))
                    geoms.append((tid, g))
            records, join_skips = run_join(geoms, index, JoinConfig(index.target_resolution, workers))
            skips.extend(join_skips)
            for c, tid, m, dim in records:
                quads.update(emit_relation_quads(c, tid, m, dim, day))
    for day in by_date:
        quads.update(emit_grid_quads(boundary, day, boundary.__getitem__))
    return quads, skips


def _atomic_write(path: Path, writer) -> None:
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            writer(fh)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def build_kg(osm_root: Path, grid_path: Path, kg_dir: Path, formats, hierarchy_path: Path,
             workers: int = 1) -> Dict[str, Path]:
    """Write quad files per format; nothing is written when inputs are missing."""
    snapshots = check_inputs(Path(osm_root), Path(grid_path))
    hierarchy = CommonTagHierarchy.load(hierarchy_path)
    quads, skips = build_quads(snapshots, Path(grid_path), hierarchy, workers)
    kg_dir = Path(kg_dir)
    kg_dir.mkdir(parents=True, exist_ok=True)
    written = {}
    for fmt in formats:
        path = kg_dir / OUTPUT_NAMES[fmt]
        _atomic_write(path, lambda fh, fmt=fmt: write_quads(quads, fh, fmt))
        written[fmt] = path

    def write_skips(fh):
        for s in skips:
            fh.write(json.dumps(s, sort_keys=True) + "\n")

    _atomic_write(kg_dir / JOIN_SKIP_LOG, write_skips)
    log.info("wrote %d quads to %s", len(quads), ", ".join(map(str, written.values())))
    return written
