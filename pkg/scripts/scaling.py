"""Time build-kg for several worker counts on one prepared output tree.

Usage: python scripts/scaling.py OUT [--workers 1,2,4]

OUT must already hold osm/ and grid/ (run prepare-osm and build-grid first).
Each run writes to a private copy; the script reports wall time, speedup over
the first entry and whether the quads are byte-identical to it.
"""
import argparse
import hashlib
import os
import shutil
import tempfile
import time
from pathlib import Path

from stkg.pipeline.cli import main as cli


def digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()[:16]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("out", type=Path)
    ap.add_argument("--workers", default="1,2,4")
    args = ap.parse_args()
    print(f"cpus={os.cpu_count()}")
    base = None
    for w in (int(x) for x in args.workers.split(",")):
        with tempfile.TemporaryDirectory() as tmp:
            work = Path(tmp)
            shutil.copytree(args.out / "osm", work / "osm")
            shutil.copytree(args.out / "grid", work / "grid")
            t0 = time.perf_counter()
            rc = cli(["build-kg", "--out", str(work), "--workers", str(w)])
            dt = time.perf_counter() - t0
            h = digest(work / "kg" / "quads.csv")
        base = base or (dt, h)
        print(f"workers={w} rc={rc} time={dt:.2f}s speedup={base[0] / dt:.2f} identical={h == base[1]}")


if __name__ == "__main__":
    main()
