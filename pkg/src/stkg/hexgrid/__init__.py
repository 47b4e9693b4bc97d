from .cells import (
    GridCell,
    InvalidCellIndex,
    MixedResolutionInput,
    ResolutionOutOfRange,
    cell_area_km2,
    cell_boundary,
    cell_center,
    cell_resolution,
    children,
    compact,
    is_pentagon,
    neighbors,
    parent,
    uncompact,
)
from .fill import polyfill
from .grid import (
    GeocoderUnavailable,
    GridConfig,
    InvalidRegion,
    NominatimGeocoder,
    build_grid,
    parse_bbox,
    read_grid,
    write_grid,
)

__all__ = [
    "GeocoderUnavailable",
    "GridCell",
    "GridConfig",
    "InvalidCellIndex",
    "InvalidRegion",
    "MixedResolutionInput",
    "NominatimGeocoder",
    "ResolutionOutOfRange",
    "build_grid",
    "cell_area_km2",
    "cell_boundary",
    "cell_center",
    "cell_resolution",
    "children",
    "compact",
    "is_pentagon",
    "neighbors",
    "parent",
    "parse_bbox",
    "polyfill",
    "read_grid",
    "uncompact",
    "write_grid",
]
