import random
from fractions import Fraction

import h3
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stkg.fixtures import MANNHEIM_CELL
from stkg.geometry import LineString, Point, Polygon, from_wkt
from stkg.hexgrid import compact
from stkg.join import GridIndex, JoinConfig, PrecisionOutOfRange, candidates, exhaustive_join, geohash_encode, partition_key, run_join

B32 = "0123456789bcdefghjkmnpqrstuvwxyz"


def geohash_oracle(lat, lon, precision):
    """Exact integer quantisation of both axes, then bit interleaving (lon first)."""
    nbits = 5 * precision
    lon_bits, lat_bits = (nbits + 1) // 2, nbits // 2
    xi = min(int((Fraction(lon) + 180) / 360 * (1 << lon_bits)), (1 << lon_bits) - 1)
    yi = min(int((Fraction(lat) + 90) / 180 * (1 << lat_bits)), (1 << lat_bits) - 1)
    code = 0
    for i in range(nbits):
        if i % 2 == 0:
            bit = (xi >> (lon_bits - 1 - i // 2)) & 1
        else:
            bit = (yi >> (lat_bits - 1 - i // 2)) & 1
        code = code << 1 | bit
    return "".join(B32[(code >> (5 * (precision - 1 - k))) & 31] for k in range(precision))


def test_geohash_examples():
    assert geohash_encode(57.64911, 10.40744, 11) == "u4pruydqqvj" == geohash_oracle(57.64911, 10.40744, 11)
    assert geohash_encode(0, 0, 1) == "s" == geohash_oracle(0, 0, 1)


@pytest.mark.parametrize("p", [0, 13, -1])
def test_geohash_precision_range(p):
    with pytest.raises(PrecisionOutOfRange):
        geohash_encode(0, 0, p)


@given(st.floats(-90, 90), st.floats(-180, 180), st.integers(1, 12))
def test_geohash_matches_oracle_and_prefix(lat, lon, p):
    g = geohash_encode(lat, lon, p)
    assert g == geohash_oracle(lat, lon, p)
    assert set(g) <= set(B32)
    assert geohash_encode(lat, lon, 12).startswith(g)


# --- candidates and run_join ---------------------------------------------

GRID200 = sorted(h3.grid_disk(MANNHEIM_CELL, 8))[:200]


def random_geometry(rng):
    x0, y0 = 8.40, 49.43
    def pt():
        return (x0 + rng.uniform(0, 0.12), y0 + rng.uniform(0, 0.09))
    k = rng.randrange(3)
    if k == 0:
        return Point(*pt())
    if k == 1:
        return LineString(tuple(pt() for _ in range(rng.randint(2, 4))))
    cx, cy = pt()
    r = rng.uniform(0.0005, 0.01)
    return Polygon((((cx - r, cy - r), (cx + r, cy - r), (cx + r, cy + r), (cx - r, cy + r), (cx - r, cy - r)),))


def test_point_candidates_hold_true_cell():
    grid = GridIndex(GRID200)
    p = Point(8.4631, 49.4836)
    cs = candidates(p, grid)
    assert MANNHEIM_CELL in cs and len(cs) <= 7


def test_spanning_geometry_and_outside():
    grid = GridIndex(GRID200)
    a, b = MANNHEIM_CELL, sorted(h3.grid_ring(MANNHEIM_CELL, 1))[0]
    (la, lo_a), (lb, lo_b) = h3.cell_to_latlng(a), h3.cell_to_latlng(b)
    cs = candidates(LineString(((lo_a, la), (lo_b, lb))), grid)
    assert {a, b} <= cs
    assert candidates(Point(0, 0), grid) == set()


def test_prefilter_soundness_and_exhaustive_equality():
    rng = random.Random(5)
    els = [(f"way/{i}", random_geometry(rng)) for i in range(60)]
    got, skips = run_join(els, GRID200)
    assert skips == []
    assert got == exhaustive_join(els, GRID200)


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_prefilter_soundness_property(rng):
    g = random_geometry(rng)
    hit = {c for c, _, _, _ in exhaustive_join([("x/1", g)], GRID200)}
    assert hit <= candidates(g, GridIndex(GRID200))


def test_compacted_grid():
    fine = h3.grid_disk(MANNHEIM_CELL, 6)
    packed = compact(fine)
    assert len({h3.get_resolution(c) for c in packed}) > 1
    rng = random.Random(8)
    els = [(f"way/{i}", random_geometry(rng)) for i in range(30)]
    got, _ = run_join(els, packed)
    assert got == exhaustive_join(els, packed)


def test_fixture_record():
    campus = from_wkt("POLYGON ((8.4631 49.4836, 8.461 49.486, 8.46 49.4836, 8.4631 49.4836))")
    recs, _ = run_join([("way/240974013", campus)], h3.grid_disk(MANNHEIM_CELL, 1))
    assert [(c, i, m.to_string()) for c, i, m, _ in recs] == [(MANNHEIM_CELL, "way/240974013", "212FF1FF2")]


def test_empty_inputs():
    assert run_join([], GRID200) == ([], [])
    assert run_join([("node/1", Point(8.46, 49.48))], []) == ([], [])


def test_worker_count_does_not_change_output():
    rng = random.Random(9)
    els = [(f"node/{i}", random_geometry(rng)) for i in range(80)]
    one, _ = run_join(els, GRID200, JoinConfig(8, workers=1))
    three, _ = run_join(els, GRID200, JoinConfig(8, workers=3))
    assert one == three


def test_partition_key():
    assert partition_key(MANNHEIM_CELL, 8) == h3.cell_to_parent(MANNHEIM_CELL, 5)
    assert partition_key("8029fffffffffff", 2) == "8029fffffffffff"
    coarse = h3.cell_to_parent(MANNHEIM_CELL, 3)
    assert partition_key(coarse, 8) == coarse


def test_duplicate_ids_rejected():
    with pytest.raises(ValueError):
        run_join([("a/1", Point(0, 0)), ("a/1", Point(1, 1))], GRID200)
