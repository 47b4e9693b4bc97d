"""Standard bit-interleaved base32 geohash."""
from __future__ import annotations

ALPHABET = "0123456789bcdefghjkmnpqrstuvwxyz"
MIN_PRECISION, MAX_PRECISION = 1, 12


class PrecisionOutOfRange(ValueError):
    pass


def geohash_encode(lat: float, lon: float, precision: int = 7) -> str:
    if not (isinstance(precision, int) and MIN_PRECISION <= precision <= MAX_PRECISION):
        raise PrecisionOutOfRange(f"geohash precision must be in [1, 12], got {precision!r}")
    if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
        raise ValueError(f"coordinates outside WGS84 range: lat={lat}, lon={lon}")
    lat_lo, lat_hi = -90.0, 90.0
    lon_lo, lon_hi = -180.0, 180.0
    chars = []
    bits = 0
    value = 0
    even = True  # even bits refine longitude
    while len(chars) < precision:
        if even:
            mid = (lon_lo + lon_hi) / 2
            if lon >= mid:
                value = value * 2 + 1
                lon_lo = mid
            else:
                value *= 2
                lon_hi = mid
        else:
            mid = (lat_lo + lat_hi) / 2
            if lat >= mid:
                value = value * 2 + 1
                lat_lo = mid
            else:
                value *= 2
                lat_hi = mid
        even = not even
        bits += 1
        if bits == 5:
            chars.append(ALPHABET[value])
            bits = value = 0
    return "".join(chars)
