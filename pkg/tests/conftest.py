import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from stkg.fixtures import mannheim_elements, mannheim_grid_cells, write_snapshot
from stkg.geometry import LineString, MultiLineString, MultiPoint, MultiPolygon, Point, Polygon, to_wkt
from stkg.hexgrid import cell_boundary, write_grid
from stkg.pipeline.cli import main

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=300, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

lon = st.floats(-180, 180, allow_nan=False, allow_infinity=False)
lat = st.floats(-90, 90, allow_nan=False, allow_infinity=False)
coord = st.tuples(lon, lat)


@st.composite
def rings(draw):
    pts = draw(st.lists(coord, min_size=3, max_size=8, unique=True))
    return tuple(pts) + (pts[0],)


points = st.builds(Point, lon, lat)
linestrings = st.lists(coord, min_size=2, max_size=8).map(lambda c: LineString(tuple(c)))
polygons = st.lists(rings(), min_size=1, max_size=3).map(lambda rs: Polygon(tuple(rs)))
geometries = st.one_of(
    points,
    linestrings,
    polygons,
    st.lists(points, min_size=1, max_size=4).map(lambda ps: MultiPoint(tuple(ps))),
    st.lists(linestrings, min_size=1, max_size=3).map(lambda ls: MultiLineString(tuple(ls))),
    st.lists(polygons, min_size=1, max_size=3).map(lambda ps: MultiPolygon(tuple(ps))),
)


@pytest.fixture(scope="session")
def mannheim_dir(tmp_path_factory) -> Path:
    d = tmp_path_factory.mktemp("mannheim")
    write_snapshot(mannheim_elements(), d / "mannheim-240101.osm.pbf")
    write_snapshot(mannheim_elements(), d / "mannheim-240101.osm")
    return d


def write_fixture_grid(path: Path, cells):
    path.parent.mkdir(parents=True, exist_ok=True)
    write_grid([(c, to_wkt(cell_boundary(c)), 8) for c in cells], path)


@pytest.fixture(scope="session")
def mannheim_kg(mannheim_dir, tmp_path_factory) -> Path:
    """Output directory after running all phases on the bundled example (cell plus its 6 neighbours)."""
    out = tmp_path_factory.mktemp("mannheim-out")
    assert main(["prepare-osm", str(mannheim_dir / "mannheim-240101.osm.pbf"), "--out", str(out)]) == 0
    write_fixture_grid(out / "grid" / "grid.csv", mannheim_grid_cells())
    assert main(["build-kg", "--out", str(out), "--format", "both"]) == 0
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
