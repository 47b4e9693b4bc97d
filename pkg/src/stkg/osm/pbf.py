"""Streaming reader for the OSM PBF format.

File layout: repeated ``[4-byte big-endian length][BlobHeader][Blob]``. The
first blob is an ``OSMHeader``; the rest are ``OSMData`` primitive blocks,
each decoded independently, so memory stays bounded by one decompressed block.
"""
from __future__ import annotations

import lzma
import zlib
from datetime import datetime, timezone
from typing import BinaryIO, Iterator, List, Optional, Tuple

from .elements import Element, InvalidElement, Member, Meta, NodeElement, RelationElement, TagSet, WayElement
from .protobuf import LENGTH, DecodeError, delta_decode, iter_fields, packed_sint, packed_varints, repeated, signed64, zigzag

MAX_HEADER_SIZE = 64 * 1024
MAX_BLOB_SIZE = 32 * 1024 * 1024
SUPPORTED_FEATURES = frozenset({"OsmSchema-V0.6", "DenseNodes"})
MEMBER_TYPE_CODES = {0: "node", 1: "way", 2: "relation"}


class MalformedBlob(ValueError):
    pass


class UnknownRequiredFeature(ValueError):
    pass


class StringIndexOutOfRange(IndexError):
    pass


def _read_exact(stream: BinaryIO, n: int) -> bytes:
    data = stream.read(n)
    if len(data) != n:
        raise MalformedBlob(f"truncated file: wanted {n} bytes, got {len(data)}")
    return data


def read_blobs(stream: BinaryIO) -> Iterator[Tuple[str, bytes]]:
    """Yield ``(blob_type, decompressed_payload)`` for every blob in the file."""
    while True:
        head = stream.read(4)
        if not head:
            return
        if len(head) != 4:
            raise MalformedBlob("truncated blob-header length")
        hlen = int.from_bytes(head, "big")
        if hlen > MAX_HEADER_SIZE:
            raise MalformedBlob(f"blob header too large: {hlen}")
        btype, dsize = None, None
        try:
            for f, _, v in iter_fields(_read_exact(stream, hlen)):
                if f == 1:
                    btype = bytes(v).decode("utf-8")
                elif f == 3:
                    dsize = v
        except DecodeError as exc:
            raise MalformedBlob(f"bad blob header: {exc}") from exc
        if btype is None or dsize is None:
            raise MalformedBlob("blob header lacks type or datasize")
        if dsize > MAX_BLOB_SIZE:
            raise MalformedBlob(f"blob too large: {dsize}")
        yield btype, _decompress(_read_exact(stream, dsize))


def _decompress(blob: bytes) -> bytes:
    raw_size = None
    payload = None
    try:
        for f, _, v in iter_fields(blob):
            if f == 2:
                raw_size = v
            elif f == 1:
                payload = bytes(v)
            elif f == 3:
                payload = zlib.decompress(v)
            elif f == 4:
                payload = lzma.decompress(v)
            elif f in (5, 6, 7):
                raise MalformedBlob(f"unsupported blob compression (field {f})")
    except (zlib.error, lzma.LZMAError, DecodeError) as exc:
        raise MalformedBlob(f"cannot decode blob: {exc}") from exc
    if payload is None:
        raise MalformedBlob("blob carries no data")
    if raw_size is not None and len(payload) != raw_size:
        raise MalformedBlob(f"raw_size mismatch: header says {raw_size}, got {len(payload)}")
    return payload


def parse_header(payload: bytes) -> dict:
    required, optional = [], []
    info = {}
    for f, _, v in iter_fields(payload):
        if f == 4:
            required.append(bytes(v).decode("utf-8"))
        elif f == 5:
            optional.append(bytes(v).decode("utf-8"))
        elif f == 16:
            info["writingprogram"] = bytes(v).decode("utf-8")
        elif f == 17:
            info["source"] = bytes(v).decode("utf-8")
    missing = [r for r in required if r not in SUPPORTED_FEATURES]
    if missing:
        raise UnknownRequiredFeature(f"file requires unsupported features: {missing}")
    info["required_features"] = required
    info["optional_features"] = optional
    return info


class _Block:
    def __init__(self, payload: bytes):
        self.strings: List[str] = []
        self.groups = []
        self.granularity = 100
        self.date_granularity = 1000
        self.lat_offset = 0
        self.lon_offset = 0
        for f, _, v in iter_fields(payload):
            if f == 1:
                self.strings = [bytes(s).decode("utf-8") for g, _, s in iter_fields(v) if g == 1]
            elif f == 2:
                self.groups.append(v)
            elif f == 17:
                self.granularity = v
            elif f == 18:
                self.date_granularity = v
            elif f == 19:
                self.lat_offset = signed64(v)
            elif f == 20:
                self.lon_offset = signed64(v)

    def s(self, i: int) -> str:
        if not 0 <= i < len(self.strings):
            raise StringIndexOutOfRange(f"string index {i} outside table of {len(self.strings)}")
        return self.strings[i]

    def lat(self, stored: int) -> float:
        return (self.lat_offset + self.granularity * stored) / 1e9

    def lon(self, stored: int) -> float:
        return (self.lon_offset + self.granularity * stored) / 1e9

    def when(self, ts: Optional[int]) -> Optional[datetime]:
        if ts is None:
            return None
        return datetime.fromtimestamp(ts * self.date_granularity / 1000.0, tz=timezone.utc)

    def tags(self, keys, vals) -> TagSet:
        if len(keys) != len(vals):
            raise MalformedBlob("tag key/value arrays differ in length")
        return _tagset((self.s(k), self.s(v)) for k, v in zip(keys, vals))


def _tagset(pairs) -> TagSet:
    # empty keys/values cannot be represented; drop them rather than abort the file
    return TagSet([(k, v) for k, v in pairs if k and v])


def _info(block: _Block, buf) -> Meta:
    fields = {}
    for f, _, v in iter_fields(buf):
        fields[f] = v
    user = block.s(fields[5]) if 5 in fields else None
    return Meta(
        version=fields.get(1),
        timestamp=block.when(signed64(fields[2])) if 2 in fields else None,
        changeset=signed64(fields[3]) if 3 in fields else None,
        uid=signed64(fields[4]) if 4 in fields else None,
        user=user or None,
        visible=bool(fields.get(6, 1)),
    )


def _dense(block: _Block, buf) -> Iterator[NodeElement]:
    ids: List[int] = []
    lats: List[int] = []
    lons: List[int] = []
    kv: List[int] = []
    dinfo = None
    for f, wt, v in iter_fields(buf):
        if f == 1:
            ids += repeated(wt, v, signed=True)
        elif f == 5:
            dinfo = v
        elif f == 8:
            lats += repeated(wt, v, signed=True)
        elif f == 9:
            lons += repeated(wt, v, signed=True)
        elif f == 10:
            kv += repeated(wt, v)
    ids, lats, lons = delta_decode(ids), delta_decode(lats), delta_decode(lons)
    if not (len(ids) == len(lats) == len(lons)):
        raise MalformedBlob("dense node arrays differ in length")
    metas = _dense_info(block, dinfo, len(ids)) if dinfo is not None else None
    k = 0
    for i, nid in enumerate(ids):
        pairs = []
        while k < len(kv) and kv[k] != 0:
            if k + 1 >= len(kv):
                raise MalformedBlob("dense keys_vals ends mid-pair")
            pairs.append((block.s(kv[k]), block.s(kv[k + 1])))
            k += 2
        k += 1  # skip the 0 delimiter
        meta = metas[i] if metas else Meta()
        if not meta.visible:
            continue
        yield NodeElement(nid, block.lat(lats[i]), block.lon(lons[i]), _tagset(pairs), meta)


def _dense_info(block: _Block, buf, n: int) -> List[Meta]:
    cols = {}
    for f, wt, v in iter_fields(buf):
        signed = f in (2, 3, 4, 5)
        cols.setdefault(f, []).extend(repeated(wt, v, signed=signed))
    version = cols.get(1, [])
    ts = delta_decode(cols.get(2, []))
    cs = delta_decode(cols.get(3, []))
    uid = delta_decode(cols.get(4, []))
    usid = delta_decode(cols.get(5, []))
    vis = cols.get(6, [])
    out = []
    for i in range(n):
        user = block.s(usid[i]) if i < len(usid) else ""
        out.append(
            Meta(
                version=version[i] if i < len(version) else None,
                timestamp=block.when(ts[i]) if i < len(ts) else None,
                changeset=cs[i] if i < len(cs) else None,
                uid=uid[i] if i < len(uid) else None,
                user=user or None,
                visible=bool(vis[i]) if i < len(vis) else True,
            )
        )
    return out


def _common(block: _Block, buf):
    eid = None
    keys: List[int] = []
    vals: List[int] = []
    meta = Meta()
    rest = {}
    for f, wt, v in iter_fields(buf):
        if f == 1:
            eid = signed64(v)
        elif f == 2:
            keys += repeated(wt, v)
        elif f == 3:
            vals += repeated(wt, v)
        elif f == 4:
            meta = _info(block, v)
        else:
            rest.setdefault(f, []).append((wt, v))
    if eid is None:
        raise MalformedBlob("element without id")
    return eid, block.tags(keys, vals), meta, rest


def _ints(rest, field, signed=False) -> List[int]:
    out: List[int] = []
    for wt, v in rest.get(field, []):
        out += repeated(wt, v, signed=signed)
    return out


def _group(block: _Block, buf) -> Iterator[Element]:
    for f, _, v in iter_fields(buf):
        if f == 1:
            nid = None
            lat = lon = 0
            keys: List[int] = []
            vals: List[int] = []
            meta = Meta()
            for g, wt, x in iter_fields(v):
                if g == 1:
                    nid = zigzag(x)
                elif g == 2:
                    keys += repeated(wt, x)
                elif g == 3:
                    vals += repeated(wt, x)
                elif g == 4:
                    meta = _info(block, x)
                elif g == 8:
                    lat = zigzag(x)
                elif g == 9:
                    lon = zigzag(x)
            if nid is None:
                raise MalformedBlob("node without id")
            if meta.visible:
                yield NodeElement(nid, block.lat(lat), block.lon(lon), block.tags(keys, vals), meta)
        elif f == 2:
            yield from _dense(block, v)
        elif f == 3:
            wid, tags, meta, rest = _common(block, v)
            refs = tuple(delta_decode(_ints(rest, 8, signed=True)))
            if meta.visible:
                yield WayElement(wid, refs, tags, meta)
        elif f == 4:
            rid, tags, meta, rest = _common(block, v)
            roles = _ints(rest, 8)
            memids = delta_decode(_ints(rest, 9, signed=True))
            types = _ints(rest, 10)
            if not (len(roles) == len(memids) == len(types)):
                raise MalformedBlob(f"relation {rid} member arrays differ in length")
            try:
                members = tuple(
                    Member(MEMBER_TYPE_CODES[t], m, block.s(r)) for r, m, t in zip(roles, memids, types)
                )
            except KeyError as exc:
                raise MalformedBlob(f"relation {rid} has unknown member type {exc}") from None
            if meta.visible:
                yield RelationElement(rid, members, tags, meta)


def parse_pbf(stream: BinaryIO) -> Iterator[Element]:
    """Yield every visible element of a PBF stream in file order."""
    blobs = read_blobs(stream)
    first = next(blobs, None)
    if first is None:
        raise MalformedBlob("empty file")
    if first[0] != "OSMHeader":
        raise MalformedBlob(f"file must start with OSMHeader, got {first[0]!r}")
    try:
        parse_header(first[1])
        for btype, payload in blobs:
            if btype != "OSMData":
                continue  # unknown blob types are skippable by definition
            block = _Block(payload)
            for group in block.groups:
                yield from _group(block, group)
    except DecodeError as exc:
        raise MalformedBlob(f"corrupt block: {exc}") from exc
    except InvalidElement as exc:
        raise MalformedBlob(str(exc)) from exc


def read_header(stream: BinaryIO) -> dict:
    blobs = read_blobs(stream)
    first = next(blobs, None)
    if first is None or first[0] != "OSMHeader":
        raise MalformedBlob("file must start with OSMHeader")
    return parse_header(first[1])
