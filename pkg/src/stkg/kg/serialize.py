"""Deterministic CSV and N-Quads serialization."""
from __future__ import annotations

import csv
import io
from typing import Iterable, TextIO

from .terms import Quad

CSV_HEADER = ("subject", "predicate", "object", "date")
FORMATS = ("csv", "nquads")


def sort_key(q: Quad, fmt: str):
    if fmt == "csv":
        r = q.csv_row()
        return (r[3], r[0], r[1], r[2], q)
    return (q.date, q.subject.nquads(), q.predicate.nquads(), q.object.nquads())


def write_quads(quads: Iterable[Quad], out: TextIO, fmt: str) -> int:
    """Write ``quads`` sorted by (date, subject, predicate, object); returns rows written."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    ordered = sorted(quads, key=lambda q: sort_key(q, fmt))
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for q in ordered:
            w.writerow(q.csv_row())
    else:
        for q in ordered:
            out.write(q.nquad())
            out.write("\n")
    return len(ordered)


def serialize(quads: Iterable[Quad], fmt: str) -> bytes:
    buf = io.StringIO(newline="")
    write_quads(quads, buf, fmt)
    return buf.getvalue().encode("utf-8")
