"""Write seeded synthetic OSM snapshots for local experiments.

Usage: python scripts/make_fixtures.py OUTDIR [--sizes small,medium,large] [--xml]

Sizes are counts of generated features (small 5k, medium 50k, large 200k).
Files are named ``synthetic<size>-240101.osm.pbf`` so prepare-osm derives the
2024-01-01 snapshot date from the name.
"""
import argparse
from pathlib import Path

from stkg.fixtures import synthetic_elements, write_snapshot

SIZES = {"small": 5_000, "medium": 50_000, "large": 200_000}


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--sizes", default="small,medium")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--xml", action="store_true", help="write .osm XML instead of PBF")
    args = ap.parse_args()
    suffix = ".osm" if args.xml else ".osm.pbf"
    for name in args.sizes.split(","):
        els = synthetic_elements(SIZES[name], seed=args.seed)
        path = write_snapshot(els, args.outdir / f"synthetic{name}-240101{suffix}")
        print(f"{path}: {len(els)} elements")


if __name__ == "__main__":
    main()
