from .engine import (
    GridIndex,
    JoinConfig,
    candidates,
    candidates_at,
    exhaustive_join,
    partition_key,
    run_join,
)
from .geohash import ALPHABET, PrecisionOutOfRange, geohash_encode

__all__ = [
    "ALPHABET",
    "GridIndex",
    "JoinConfig",
    "PrecisionOutOfRange",
    "candidates",
    "candidates_at",
    "exhaustive_join",
    "geohash_encode",
    "partition_key",
    "run_join",
]
