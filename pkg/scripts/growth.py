"""Fit quads-per-element growth over synthetic sizes and extrapolate.

Usage: python scripts/growth.py [--sizes 2000,5000,10000] [--extrapolate 1e9]

Runs the full pipeline on each size in a temp dir, fits a line through
(elements, quads) and prints R^2 plus the projected quad count for the
requested element count. Synthetic density differs from real OSM, so the
projection only says something about linearity, not planet totals.
"""
import argparse
import tempfile
from pathlib import Path

import numpy as np

from stkg.fixtures import SYNTHETIC_BBOX, synthetic_elements, write_snapshot
from stkg.pipeline.cli import main as cli
from stkg.pipeline.stats import compute_stats


def run(n: int, seed: int, root: Path) -> tuple[int, int]:
    els = synthetic_elements(n, seed)
    src = write_snapshot(els, root / f"synthetic{n}-240101.osm.pbf")
    out = root / "out"
    bbox = ",".join(map(str, SYNTHETIC_BBOX.as_tuple()))
    for argv in (["prepare-osm", str(src)], ["build-grid", "--bbox", bbox], ["build-kg"]):
        assert cli(argv + ["--out", str(out)]) == 0
    return len(els), compute_stats([out / "kg" / "quads.csv"]).total_quads


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="2000,5000,10000")
    ap.add_argument("--extrapolate", type=float, default=1e9)
    args = ap.parse_args()
    xs, ys = [], []
    for i, n in enumerate(int(s) for s in args.sizes.split(",")):
        with tempfile.TemporaryDirectory() as tmp:
            e, q = run(n, 100 + i, Path(tmp))
        xs.append(e)
        ys.append(q)
        print(f"features={n} elements={e} quads={q}")
    x, y = np.array(xs, float), np.array(ys, float)
    slope, icpt = np.polyfit(x, y, 1)
    r2 = 1 - ((y - (slope * x + icpt)) ** 2).sum() / ((y - y.mean()) ** 2).sum()
    print(f"slope={slope:.3f} quads/element intercept={icpt:.1f} R2={r2:.5f}")
    print(f"projected quads at {args.extrapolate:.3g} elements: {slope * args.extrapolate + icpt:.4g}")


if __name__ == "__main__":
    main()
