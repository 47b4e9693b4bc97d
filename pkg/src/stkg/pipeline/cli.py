"""Command-line entry point: ``stkg prepare-osm | build-grid | build-kg | stats``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ..geometry.build import GeometrySkipped
from ..hexgrid.cells import ResolutionOutOfRange
from ..hexgrid.grid import GeocoderUnavailable, InvalidRegion, NominatimGeocoder, build_grid, write_grid
from ..join.geohash import PrecisionOutOfRange
from ..osm import InvalidElement, MalformedBlob, MalformedXml, NoDateFound, StringIndexOutOfRange, UnknownRequiredFeature
from .build_kg import MissingIntermediates, build_kg
from .config import ConfigError, PipelineConfig, load_toml, make_config
from .prepare import prepare_osm
from .stats import compute_stats, quad_files

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_GEOCODER, EXIT_MISSING = 0, 2, 3, 4, 5

log = logging.getLogger("stkg")

_PARSE_ERRORS = (MalformedBlob, MalformedXml, UnknownRequiredFeature, StringIndexOutOfRange, InvalidElement,
                 NoDateFound, ConfigError, InvalidRegion, ResolutionOutOfRange, PrecisionOutOfRange)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML file with pipeline settings (flags win)")
    common.add_argument("--out", type=Path, help="output directory (default: out)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="stkg", description="Spatio-temporal knowledge graph from OSM snapshots and a hexagonal grid.")
    sub = p.add_subparsers(dest="command", required=True)

    prep = sub.add_parser("prepare-osm", parents=[common], help="parse snapshots into per-layer element files")
    prep.add_argument("inputs", nargs="*", type=Path, help=".osm.pbf or .osm snapshot files")
    prep.add_argument("--date", help="snapshot date YYYY-MM-DD (default: from the -YYMMDD filename token)")
    prep.add_argument("--geohash-precision", type=int)

    grid = sub.add_parser("build-grid", parents=[common], help="build the cell grid")
    grid.add_argument("--resolution", type=int)
    grid.add_argument("--compact", action="store_true", default=None)
    region = grid.add_mutually_exclusive_group()
    region.add_argument("--bbox", help="minLon,minLat,maxLon,maxLat")
    region.add_argument("--region", help="region name resolved through the geocoder")
    grid.add_argument("--world-map", type=Path, help="CSV of land polygons (name,iso_a3,wkt)")

    kg = sub.add_parser("build-kg", parents=[common], help="emit quads from prepared files and the grid")
    kg.add_argument("--format", choices=("csv", "nquads", "both"))
    kg.add_argument("--workers", type=int)
    kg.add_argument("--common-tags", type=Path, help="JSON common-tag hierarchy")

    st = sub.add_parser("stats", parents=[common], help="count quads, entities and predicates")
    st.add_argument("paths", nargs="*", type=Path, help="quad files or directories (default: <out>/kg)")
    st.add_argument("--json", action="store_true", help="print only the JSON line")
    return p


def _config(args) -> PipelineConfig:
    flags = {k: v for k, v in vars(args).items() if k not in ("config", "command", "verbose", "paths", "json")}
    if args.command == "prepare-osm" and not flags.get("inputs"):
        flags["inputs"] = None
    file_values = load_toml(args.config) if args.config else {}
    return make_config(file_values, flags)


def run(cfg: PipelineConfig, command: str, args) -> int:
    if command == "prepare-osm":
        if not cfg.inputs:
            raise ConfigError("prepare-osm needs at least one input file")
        for d in prepare_osm(cfg.inputs, cfg.osm_dir, cfg.date, cfg.geohash_precision):
            print(d)
    elif command == "build-grid":
        gc = cfg.grid_config()
        geocoder = NominatimGeocoder() if isinstance(gc.region, str) else None
        records = build_grid(gc, geocoder)
        cfg.grid_path.parent.mkdir(parents=True, exist_ok=True)
        n = write_grid(records, cfg.grid_path)
        print(f"{cfg.grid_path}: {n} cells")
    elif command == "build-kg":
        for path in build_kg(cfg.osm_dir, cfg.grid_path, cfg.kg_dir, cfg.formats, cfg.common_tags, cfg.workers).values():
            print(path)
    elif command == "stats":
        files = [f for p in (args.paths or [cfg.kg_dir]) for f in quad_files(p)]
        stats = compute_stats(files)
        if not args.json:
            print(stats.table())
        print(stats.to_json())
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on bad usage
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        return run(cfg, args.command, args)
    except MissingIntermediates as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except GeocoderUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOCODER
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, GeometrySkipped) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
