"""The DE-9IM matrix value type, the dimension function, and mask matching."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

_SYMBOL = {-1: "F", 0: "0", 1: "1", 2: "2"}
_VALUE = {v: k for k, v in _SYMBOL.items()}
MASK_SYMBOLS = frozenset("TF*012")


def dim(parts: Iterable[str]) -> int:
    """Dimension of a point set given as the kinds of its components.

    ``parts`` holds any of ``"point"``, ``"line"``, ``"area"``; an empty
    collection is the empty set.
    """
    order = {"point": 0, "line": 1, "area": 2}
    best = -1
    for kind in parts:
        try:
            best = max(best, order[kind])
        except KeyError:
            raise ValueError(f"unknown point-set component {kind!r}") from None
    return best


@dataclass(frozen=True)
class De9imMatrix:
    """Rows and columns are (Interior, Boundary, Exterior); cells in {-1, 0, 1, 2}."""

    cells: Tuple[Tuple[int, int, int], Tuple[int, int, int], Tuple[int, int, int]]

    def __post_init__(self):
        if len(self.cells) != 3 or any(len(r) != 3 for r in self.cells):
            raise ValueError("DE-9IM matrix must be 3x3")
        for r in self.cells:
            for v in r:
                if v not in _SYMBOL:
                    raise ValueError(f"invalid DE-9IM cell value {v!r}")

    @classmethod
    def from_string(cls, s: str) -> "De9imMatrix":
        if len(s) != 9:
            raise ValueError(f"DE-9IM string must have 9 symbols: {s!r}")
        v = [_VALUE[c] for c in s.upper()]
        return cls((tuple(v[0:3]), tuple(v[3:6]), tuple(v[6:9])))

    def to_string(self) -> str:
        return "".join(_SYMBOL[v] for row in self.cells for v in row)

    def transpose(self) -> "De9imMatrix":
        c = self.cells
        return De9imMatrix(tuple(tuple(c[j][i] for j in range(3)) for i in range(3)))

    def __str__(self) -> str:
        return self.to_string()


def matrix_to_string(m: De9imMatrix) -> str:
    return m.to_string()


def check_mask(pattern: str) -> str:
    if len(pattern) != 9 or not set(pattern.upper()) <= MASK_SYMBOLS:
        raise ValueError(f"invalid DE-9IM mask {pattern!r}")
    return pattern.upper()


def matches(m: De9imMatrix, pattern: str) -> bool:
    pattern = check_mask(pattern)
    for sym, v in zip(pattern, (v for row in m.cells for v in row)):
        if sym == "*":
            continue
        if sym == "T":
            if v < 0:
                return False
        elif sym == "F":
            if v != -1:
                return False
        elif int(sym) != v:
            return False
    return True
