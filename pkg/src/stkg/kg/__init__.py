from .emit import (
    RELATION_PROPERTIES,
    emit_geometry_quads,
    emit_grid_quads,
    emit_relation_quads,
    emit_tag_quads,
)
from .hierarchy import CommonTagHierarchy
from .serialize import CSV_HEADER, serialize, write_quads
from .terms import Quad, Term

__all__ = [
    "CSV_HEADER",
    "CommonTagHierarchy",
    "Quad",
    "RELATION_PROPERTIES",
    "Term",
    "emit_geometry_quads",
    "emit_grid_quads",
    "emit_relation_quads",
    "emit_tag_quads",
    "serialize",
    "write_quads",
]
