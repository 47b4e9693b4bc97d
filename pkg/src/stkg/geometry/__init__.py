from .shapes import (
    Bbox,
    Geometry,
    GeometryError,
    LineString,
    MultiLineString,
    MultiPoint,
    MultiPolygon,
    Point,
    Polygon,
    bbox,
    iter_coords,
    normalize,
)
from .wkt import WktSyntaxError, from_wkt, to_wkt

__all__ = [
    "Bbox",
    "Geometry",
    "GeometryError",
    "LineString",
    "MultiLineString",
    "MultiPoint",
    "MultiPolygon",
    "Point",
    "Polygon",
    "WktSyntaxError",
    "bbox",
    "from_wkt",
    "iter_coords",
    "normalize",
    "to_wkt",
]
