"""Minimal protocol-buffers wire-format codec (varints, zigzag, packed fields)."""
from __future__ import annotations

from typing import Iterator, List, Tuple

VARINT, FIXED64, LENGTH, FIXED32 = 0, 1, 2, 5


class DecodeError(ValueError):
    pass


def read_varint(buf, pos: int) -> Tuple[int, int]:
    result = 0
    shift = 0
    n = len(buf)
    while True:
        if pos >= n:
            raise DecodeError("truncated varint")
        b = buf[pos]
        pos += 1
        result |= (b & 0x7F) << shift
        if not b & 0x80:
            return result, pos
        shift += 7
        if shift > 63:
            raise DecodeError("varint too long")


def zigzag(v: int) -> int:
    return (v >> 1) ^ -(v & 1)


def signed64(v: int) -> int:
    return v - (1 << 64) if v >= 1 << 63 else v


def iter_fields(buf) -> Iterator[Tuple[int, int, object]]:
    """Yield ``(field_number, wire_type, value)``; LENGTH values are memoryviews."""
    mv = memoryview(buf)
    pos = 0
    n = len(mv)
    while pos < n:
        key, pos = read_varint(mv, pos)
        field, wt = key >> 3, key & 7
        if wt == VARINT:
            v, pos = read_varint(mv, pos)
        elif wt == LENGTH:
            size, pos = read_varint(mv, pos)
            if pos + size > n:
                raise DecodeError("length-delimited field overruns buffer")
            v = mv[pos : pos + size]
            pos += size
        elif wt == FIXED64:
            v = int.from_bytes(mv[pos : pos + 8], "little")
            pos += 8
        elif wt == FIXED32:
            v = int.from_bytes(mv[pos : pos + 4], "little")
            pos += 4
        else:
            raise DecodeError(f"unsupported wire type {wt}")
        yield field, wt, v


def packed_varints(buf) -> List[int]:
    out = []
    pos = 0
    n = len(buf)
    while pos < n:
        v, pos = read_varint(buf, pos)
        out.append(v)
    return out


def packed_sint(buf) -> List[int]:
    return [zigzag(v) for v in packed_varints(buf)]


def delta_decode(values: List[int]) -> List[int]:
    out = []
    acc = 0
    for v in values:
        acc += v
        out.append(acc)
    return out


def repeated(wt: int, value, signed: bool = False) -> List[int]:
    """Values of a repeated integer field that may arrive packed or unpacked."""
    if wt == LENGTH:
        return packed_sint(value) if signed else packed_varints(value)
    return [zigzag(value) if signed else value]


# encoding side, used by the writer


def encode_varint(v: int) -> bytes:
    if v < 0:
        v += 1 << 64
    out = bytearray()
    while True:
        b = v & 0x7F
        v >>= 7
        if v:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def encode_zigzag(v: int) -> int:
    return (v << 1) ^ (v >> 63) if v < 0 else v << 1


def field_varint(field: int, v: int) -> bytes:
    return encode_varint(field << 3 | VARINT) + encode_varint(v)


def field_bytes(field: int, data: bytes) -> bytes:
    return encode_varint(field << 3 | LENGTH) + encode_varint(len(data)) + data


def field_packed(field: int, values, signed: bool = False) -> bytes:
    body = b"".join(encode_varint(encode_zigzag(v) if signed else v) for v in values)
    return field_bytes(field, body)


def delta_encode(values) -> List[int]:
    out = []
    prev = 0
    for v in values:
        out.append(v - prev)
        prev = v
    return out
