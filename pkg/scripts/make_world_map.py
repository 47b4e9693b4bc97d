"""Convert the Natural Earth 1:110m countries shapefile into the bundled WKT map.

Usage: python scripts/make_world_map.py path/to/naturalearth_lowres.shp

Natural Earth is public domain. The output CSV has columns
``name,iso_a3,wkt`` sorted by name, coordinates rounded to 1e-6 degrees.
"""
import csv
import sys
from pathlib import Path

import shapefile  # pyshp

from stkg.geometry import MultiPolygon, Polygon, to_wkt

OUT = Path(__file__).resolve().parents[1] / "src" / "stkg" / "hexgrid" / "data" / "world_lowres.csv"


def _ring(pts):
    return tuple((round(x, 6), round(y, 6)) for x, y in pts)


def convert(shp_path: str) -> int:
    reader = shapefile.Reader(shp_path)
    rows = []
    for rec in reader.iterShapeRecords():
        gi = rec.shape.__geo_interface__
        if gi["type"] == "Polygon":
            geom = Polygon(tuple(_ring(r) for r in gi["coordinates"]))
        else:
            geom = MultiPolygon(tuple(Polygon(tuple(_ring(r) for r in p)) for p in gi["coordinates"]))
        rows.append((rec.record["name"], rec.record["iso_a3"], to_wkt(geom)))
    rows.sort()
    with open(OUT, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["name", "iso_a3", "wkt"])
        w.writerows(rows)
    return len(rows)


if __name__ == "__main__":
    print(convert(sys.argv[1]), "countries written to", OUT)
