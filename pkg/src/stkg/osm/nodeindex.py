"""On-disk node-location index.

File format: little-endian fixed-width records ``(id: int64, lat: float64,
lon: float64)`` sorted by id. Built by external merge sort so planet-sized
inputs never need to fit in memory; lookups go through a read-only memory map.
"""
from __future__ import annotations

import heapq
import os
import struct
import tempfile
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

RECORD = struct.Struct("<qdd")
DTYPE = np.dtype([("id", "<i8"), ("lat", "<f8"), ("lon", "<f8")])


class DanglingNodeRef(KeyError):
    def __init__(self, node_id: int):
        super().__init__(node_id)
        self.node_id = node_id

    def __str__(self):
        return f"node {self.node_id} is referenced but not present"


def _write_run(records: List[Tuple[int, float, float]], directory: str) -> str:
    records.sort()
    fd, path = tempfile.mkstemp(suffix=".run", dir=directory)
    with os.fdopen(fd, "wb") as fh:
        for r in records:
            fh.write(RECORD.pack(*r))
    return path


def _read_run(path: str) -> Iterator[Tuple[int, float, float]]:
    with open(path, "rb") as fh:
        while True:
            chunk = fh.read(RECORD.size * 4096)
            if not chunk:
                return
            yield from RECORD.iter_unpack(chunk)


def build_node_index(nodes: Iterable[Tuple[int, float, float]], path: Path, run_size: int = 1_000_000) -> int:
    """Write sorted ``(id, lat, lon)`` records to ``path``; returns the record count."""
    path = Path(path)
    tmpdir = tempfile.mkdtemp(dir=path.parent)
    runs: List[str] = []
    buf: List[Tuple[int, float, float]] = []
    try:
        for rec in nodes:
            buf.append(rec)
            if len(buf) >= run_size:
                runs.append(_write_run(buf, tmpdir))
                buf = []
        if buf or not runs:
            runs.append(_write_run(buf, tmpdir))
        n = 0
        last = None
        with open(path, "wb") as out:
            for rec in heapq.merge(*(_read_run(r) for r in runs)):
                if rec[0] == last:
                    continue
                out.write(RECORD.pack(*rec))
                last = rec[0]
                n += 1
        return n
    finally:
        for r in runs:
            os.unlink(r)
        os.rmdir(tmpdir)


class NodeIndex:
    """Sorted id -> (lon, lat) lookups over an index file."""

    def __init__(self, path: Path):
        self.path = Path(path)
        size = self.path.stat().st_size
        if size % RECORD.size:
            raise ValueError(f"{path} is not a node index (size {size})")
        self._data = np.memmap(self.path, dtype=DTYPE, mode="r") if size else np.zeros(0, dtype=DTYPE)
        self._ids = self._data["id"]

    def __len__(self) -> int:
        return len(self._data)

    def get(self, node_id: int) -> Optional[Tuple[float, float]]:
        i = int(np.searchsorted(self._ids, node_id))
        if i < len(self._ids) and self._ids[i] == node_id:
            rec = self._data[i]
            return (float(rec["lon"]), float(rec["lat"]))
        return None

    def __call__(self, node_id: int) -> Tuple[float, float]:
        loc = self.get(node_id)
        if loc is None:
            raise DanglingNodeRef(node_id)
        return loc

    def lookup_many(self, ids: Sequence[int]) -> List[Tuple[float, float]]:
        """Coordinates for ``ids`` in order; raises :class:`DanglingNodeRef` on the first miss."""
        arr = np.asarray(ids, dtype="<i8")
        pos = np.searchsorted(self._ids, arr)
        pos_c = np.minimum(pos, max(len(self._ids) - 1, 0))
        if len(self._ids) == 0:
            raise DanglingNodeRef(int(arr[0]))
        hit = self._ids[pos_c] == arr
        if not hit.all():
            raise DanglingNodeRef(int(arr[np.argmin(hit)]))
        rec = self._data[pos_c]
        return list(zip(rec["lon"].tolist(), rec["lat"].tolist()))

    def close(self) -> None:
        self._data = None
        self._ids = None
