"""Named spatial predicates as disjunctions of DE-9IM masks.

Rows taken from the published predicate table: equals, disjoint, touches,
crosses (point/line, line/line), within, overlaps (point/point, area/area,
line/line); intersects and contains are defined through disjoint and within.
Completed from the OGC Simple Features definitions where that table is
silent: crosses for the remaining mixed-dimension pairs, and the four-pattern
covers / coveredBy families.
"""
from __future__ import annotations

from typing import Dict, Tuple

from ..geometry.shapes import Geometry
from .matrix import De9imMatrix, matches
from .relate import UnsupportedPair, relate

EQUALS = ("T*F**FFF*",)
DISJOINT = ("FF*FF****",)
TOUCHES = ("FT*******", "F**T*****", "F***T****")
WITHIN = ("T*F**F***",)
CONTAINS = ("T*****FF*",)
CROSSES_LOWER_DIM = ("T*T******",)  # dim(a) < dim(b); point/line row, OGC for */area
CROSSES_HIGHER_DIM = ("T*****T**",)  # dim(a) > dim(b); OGC
CROSSES_LINE_LINE = ("0********",)
OVERLAPS_POINT_AREA = ("T*T***T**",)  # point/point and area/area
OVERLAPS_LINE = ("1*T***T**",)
COVERS = ("T*****FF*", "*T****FF*", "***T**FF*", "****T*FF*")
COVERED_BY = ("T*F**F***", "*TF**F***", "**FT*F***", "**F*TF***")

PREDICATES = (
    "equals",
    "disjoint",
    "touches",
    "crosses",
    "within",
    "contains",
    "overlaps",
    "intersects",
    "covers",
    "coveredBy",
)


def masks_for(name: str, dim_a: int, dim_b: int) -> Tuple[str, ...]:
    """Mask family for ``name`` on a pair of the given dimensions.

    Raises :class:`UnsupportedPair` where the predicate is undefined.
    """
    if name == "equals":
        return EQUALS
    if name == "disjoint":
        return DISJOINT
    if name == "touches":
        if dim_a == 0 and dim_b == 0:
            raise UnsupportedPair("touches is undefined for point/point")
        return TOUCHES
    if name == "crosses":
        if dim_a == dim_b == 1:
            return CROSSES_LINE_LINE
        if dim_a < dim_b:
            return CROSSES_LOWER_DIM
        if dim_a > dim_b:
            return CROSSES_HIGHER_DIM
        raise UnsupportedPair(f"crosses is undefined for dimension {dim_a}/{dim_b}")
    if name == "within":
        return WITHIN
    if name == "contains":
        return CONTAINS
    if name == "overlaps":
        if dim_a != dim_b:
            raise UnsupportedPair(f"overlaps needs equal dimensions, got {dim_a}/{dim_b}")
        return OVERLAPS_LINE if dim_a == 1 else OVERLAPS_POINT_AREA
    if name == "covers":
        return COVERS
    if name == "coveredBy":
        return COVERED_BY
    if name == "intersects":
        return DISJOINT  # negated by the caller
    raise ValueError(f"unknown predicate {name!r}")


def supported(name: str, dim_a: int, dim_b: int) -> bool:
    try:
        masks_for(name, dim_a, dim_b)
    except UnsupportedPair:
        return False
    return True


def evaluate(m: De9imMatrix, name: str, dim_a: int, dim_b: int) -> bool:
    """Decide ``name`` from an already computed matrix."""
    masks = masks_for(name, dim_a, dim_b)
    hit = any(matches(m, p) for p in masks)
    return not hit if name == "intersects" else hit


def predicate(a: Geometry, b: Geometry, name: str) -> bool:
    masks_for(name, a.dimension, b.dimension)
    return evaluate(relate(a, b), name, a.dimension, b.dimension)


def all_predicates(m: De9imMatrix, dim_a: int, dim_b: int) -> Dict[str, bool]:
    """Every predicate defined for the pair, evaluated on ``m``."""
    return {n: evaluate(m, n, dim_a, dim_b) for n in PREDICATES if supported(n, dim_a, dim_b)}


def equals(a, b):
    return predicate(a, b, "equals")


def disjoint(a, b):
    return predicate(a, b, "disjoint")


def touches(a, b):
    return predicate(a, b, "touches")


def crosses(a, b):
    return predicate(a, b, "crosses")


def within(a, b):
    return predicate(a, b, "within")


def contains(a, b):
    return predicate(a, b, "contains")


def overlaps(a, b):
    return predicate(a, b, "overlaps")


def intersects(a, b):
    return predicate(a, b, "intersects")


def covers(a, b):
    return predicate(a, b, "covers")


def covered_by(a, b):
    return predicate(a, b, "coveredBy")
