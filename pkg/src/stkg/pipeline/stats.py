"""Graph statistics over serialized quad files with bounded-memory distinct counts."""
from __future__ import annotations

import csv
import heapq
import json
import os
import re
import tempfile
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Tuple

_NQ_TERM = re.compile(r'<[^>]*>|"(?:[^"\\]|\\.)*"(?:\^\^<[^>]*>|@[A-Za-z0-9-]+)?')


@dataclass
class GraphStats:
    total_quads: int = 0
    distinct_entities: int = 0
    distinct_predicates: int = 0
    per_date: Dict[str, int] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def table(self) -> str:
        rows = [("Total quads", self.total_quads), ("Distinct entity count", self.distinct_entities),
                ("Distinct predicate count", self.distinct_predicates)]
        rows += [(f"  quads on {d}", n) for d, n in sorted(self.per_date.items())]
        width = max(len(r[0]) for r in rows)
        return "\n".join(f"{k.ljust(width)}  {v:>14,}" for k, v in rows)


def external_distinct_count(values: Iterable[str], run_size: int = 500_000) -> int:
    """Number of distinct strings, sorting runs to disk and merging them."""
    with tempfile.TemporaryDirectory(prefix="stkg-distinct-") as tmp:
        runs: List[str] = []
        buf: List[str] = []

        def flush():
            path = os.path.join(tmp, f"run{len(runs)}")
            with open(path, "w", encoding="utf-8") as fh:
                for v in sorted(set(buf)):
                    fh.write(json.dumps(v) + "\n")
            runs.append(path)
            buf.clear()

        for v in values:
            buf.append(v)
            if len(buf) >= run_size:
                flush()
        if buf or not runs:
            flush()
        handles = [open(p, encoding="utf-8") for p in runs]
        try:
            count, last = 0, None
            for line in heapq.merge(*handles):
                if line != last:
                    count += 1
                    last = line
            return count
        finally:
            for h in handles:
                h.close()


def iter_csv_quads(path: Path) -> Iterator[Tuple[str, str, str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return
        for row in reader:
            yield tuple(row)


def iter_nquads(path: Path) -> Iterator[Tuple[str, str, str, str]]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            terms = _NQ_TERM.findall(line)
            if len(terms) != 4:
                raise ValueError(f"not a quad statement: {line[:80]!r}")
            s, p, o, g = terms
            yield s, p, o, g[len("<date:"):-1] if g.startswith("<date:") else g


def quad_files(target: Path) -> List[Path]:
    """Quad files for a path: a file itself, or the csv (else nquads) output in a directory."""
    target = Path(target)
    if target.is_file():
        return [target]
    if not target.exists():
        raise FileNotFoundError(f"{target} does not exist")
    for name in ("quads.csv", "quads.nq"):
        if (target / name).is_file():
            return [target / name]
    return []


def compute_stats(paths: Iterable[Path]) -> GraphStats:
    """Exact totals and distinct counts; entities are distinct subject and object lexical forms."""
    paths = list(paths)

    def rows():
        for path in paths:
            yield from (iter_nquads(path) if str(path).endswith(".nq") else iter_csv_quads(path))

    stats = GraphStats()
    per_date: Counter = Counter()
    for _, _, _, d in rows():
        stats.total_quads += 1
        per_date[d] += 1
    if stats.total_quads:
        stats.per_date = dict(sorted(per_date.items()))
        stats.distinct_entities = external_distinct_count(x for s, _, o, _ in rows() for x in (s, o))
        stats.distinct_predicates = external_distinct_count(p for _, p, _, _ in rows())
    return stats
