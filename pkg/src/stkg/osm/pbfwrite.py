"""PBF writer: dense nodes, ways and relations in zlib-compressed blocks.

Used to produce test fixtures and for round-trip checks against the reader.
"""
from __future__ import annotations

import zlib
from typing import BinaryIO, Iterable, List, Optional

from .elements import Element, Meta, NodeElement, RelationElement, WayElement
from .protobuf import (
    delta_encode,
    encode_varint,
    encode_zigzag,
    field_bytes,
    field_packed,
    field_varint,
)

_MEMBER_CODES = {"node": 0, "way": 1, "relation": 2}


class _Strings:
    def __init__(self):
        self.index = {"": 0}
        self.items = [""]

    def __call__(self, s: str) -> int:
        i = self.index.get(s)
        if i is None:
            i = self.index[s] = len(self.items)
            self.items.append(s)
        return i

    def encode(self) -> bytes:
        return b"".join(field_bytes(1, s.encode("utf-8")) for s in self.items)


def _blob(btype: str, payload: bytes, compress: bool) -> bytes:
    if compress:
        blob = field_varint(2, len(payload)) + field_bytes(3, zlib.compress(payload, 9))
    else:
        blob = field_bytes(1, payload)
    header = field_bytes(1, btype.encode()) + field_varint(3, len(blob))
    return len(header).to_bytes(4, "big") + header + blob


def _ts(meta: Meta, date_granularity: int) -> Optional[int]:
    if meta.timestamp is None:
        return None
    return int(round(meta.timestamp.timestamp() * 1000)) // date_granularity


def _info(meta: Meta, st: _Strings, date_granularity: int) -> bytes:
    out = b""
    if meta.version is not None:
        out += field_varint(1, meta.version)
    ts = _ts(meta, date_granularity)
    if ts is not None:
        out += field_varint(2, ts)
    if meta.changeset is not None:
        out += field_varint(3, meta.changeset)
    if meta.uid is not None:
        out += field_varint(4, meta.uid)
    if meta.user is not None:
        out += field_varint(5, st(meta.user))
    return out


class PbfWriter:
    def __init__(self, granularity: int = 100, lat_offset: int = 0, lon_offset: int = 0,
                 date_granularity: int = 1000, block_size: int = 8000, compress: bool = True,
                 with_metadata: bool = True):
        self.granularity = granularity
        self.lat_offset = lat_offset
        self.lon_offset = lon_offset
        self.date_granularity = date_granularity
        self.block_size = block_size
        self.compress = compress
        self.with_metadata = with_metadata

    def header(self) -> bytes:
        payload = (
            field_bytes(4, b"OsmSchema-V0.6")
            + field_bytes(4, b"DenseNodes")
            + field_bytes(16, b"stkg")
        )
        return _blob("OSMHeader", payload, self.compress)

    def _coord(self, deg: float, offset: int) -> int:
        return round((deg * 1e9 - offset) / self.granularity)

    def _dense(self, nodes: List[NodeElement], st: _Strings) -> bytes:
        ids = [n.id for n in nodes]
        lats = [self._coord(n.lat, self.lat_offset) for n in nodes]
        lons = [self._coord(n.lon, self.lon_offset) for n in nodes]
        kv: List[int] = []
        for n in nodes:
            for k, v in n.tags:
                kv += [st(k), st(v)]
            kv.append(0)
        body = field_packed(1, delta_encode(ids), signed=True)
        if self.with_metadata:
            metas = [n.meta for n in nodes]
            if all(m.version is not None and m.timestamp is not None for m in metas):
                info = field_packed(1, [m.version for m in metas])
                info += field_packed(2, delta_encode([_ts(m, self.date_granularity) for m in metas]), signed=True)
                info += field_packed(3, delta_encode([m.changeset or 0 for m in metas]), signed=True)
                info += field_packed(4, delta_encode([m.uid or 0 for m in metas]), signed=True)
                info += field_packed(5, delta_encode([st(m.user or "") for m in metas]), signed=True)
                body += field_bytes(5, info)
        body += field_packed(8, delta_encode(lats), signed=True)
        body += field_packed(9, delta_encode(lons), signed=True)
        if any(n.tags for n in nodes):
            body += field_packed(10, kv)
        return field_bytes(2, body)

    def _common(self, el, st: _Strings) -> bytes:
        out = field_varint(1, el.id)
        if el.tags:
            out += field_packed(2, [st(k) for k, _ in el.tags])
            out += field_packed(3, [st(v) for _, v in el.tags])
        if self.with_metadata:
            info = _info(el.meta, st, self.date_granularity)
            if info:
                out += field_bytes(4, info)
        return out

    def _block(self, elements: List[Element]) -> bytes:
        st = _Strings()
        groups = b""
        run: List[Element] = []

        def flush():
            nonlocal groups
            if not run:
                return
            if run[0].kind == "node":
                groups += field_bytes(2, self._dense(run, st))
            elif run[0].kind == "way":
                body = b"".join(
                    field_bytes(3, self._common(w, st) + field_packed(8, delta_encode(w.node_refs), signed=True))
                    for w in run
                )
                groups += field_bytes(2, body)
            else:
                body = b""
                for r in run:
                    msg = self._common(r, st)
                    msg += field_packed(8, [st(m.role) for m in r.members])
                    msg += field_packed(9, delta_encode([m.ref for m in r.members]), signed=True)
                    msg += field_packed(10, [_MEMBER_CODES[m.type] for m in r.members])
                    body += field_bytes(4, msg)
                groups += field_bytes(2, body)
            run.clear()

        for el in elements:
            if run and run[0].kind != el.kind:
                flush()
            run.append(el)
        flush()
        payload = field_bytes(1, st.encode()) + groups
        if self.granularity != 100:
            payload += field_varint(17, self.granularity)
        if self.date_granularity != 1000:
            payload += field_varint(18, self.date_granularity)
        if self.lat_offset:
            payload += field_varint(19, self.lat_offset)
        if self.lon_offset:
            payload += field_varint(20, self.lon_offset)
        return _blob("OSMData", payload, self.compress)

    def write(self, elements: Iterable[Element], stream: BinaryIO) -> None:
        stream.write(self.header())
        batch: List[Element] = []
        for el in elements:
            batch.append(el)
            if len(batch) >= self.block_size:
                stream.write(self._block(batch))
                batch = []
        if batch:
            stream.write(self._block(batch))


def write_pbf(elements: Iterable[Element], stream: BinaryIO, **kwargs) -> None:
    PbfWriter(**kwargs).write(elements, stream)
