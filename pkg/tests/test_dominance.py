import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homocontain.dominance import (
    LEAF_BITS,
    DimensionError,
    DominanceIndex,
    PointD,
    brute_force_dominated,
    build,
    expected_layouts,
    query_dominated,
)

THREE = [PointD((1, 2), 0), PointD((3, 1), 1), PointD((2, 3), 2)]


def scan(coords, q):
    return set(np.nonzero(np.all(coords <= q, axis=1))[0].tolist())


def test_empty_index():
    index = build([], 3)
    assert index.size == 0
    assert query_dominated(index, (1, 2, 3)) == set()


def test_three_points():
    index = build(THREE, 2)
    assert len(index) == 3
    assert query_dominated(index, PointD((2, 3), -1)) == {0, 2}
    assert query_dominated(index, (0.5, 0.5)) == set()


def test_brute_force_definition():
    assert brute_force_dominated([PointD((0, 0), 0)], (0, 0)) == {0}
    assert brute_force_dominated([PointD((1, 1), 0)], (1, 0)) == set()


def test_build_errors():
    with pytest.raises(DimensionError):
        build([PointD((1, 2), 0), PointD((1, 2, 3), 1)], 2)
    with pytest.raises(ValueError, match="duplicate"):
        build([PointD((1, 2), 0), PointD((3, 4), 0)], 2)
    with pytest.raises(ValueError, match="finite"):
        build([PointD((1, float("nan")), 0)], 2)
    with pytest.raises(DimensionError):
        build(THREE, 2).query((1, 2, 3))
    with pytest.raises(DimensionError):
        brute_force_dominated(THREE, (1, 2, 3))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [1, 31, 64, 65, 200, 1000])
def test_matches_scan(rng, d, n):
    coords = rng.integers(0, 12, size=(n, d)).astype(float)  # many ties
    index = DominanceIndex.from_arrays(coords)
    for q in rng.integers(-1, 13, size=(60, d)).astype(float):
        assert index.query(q) == scan(coords, q)


def test_matches_brute_force_on_point_lists(rng):
    for _ in range(20):
        n = int(rng.integers(0, 300))
        pts = [PointD(tuple(rng.random(3)), i) for i in range(n)]
        index = build(pts, 3)
        for q in rng.random((25, 3)):
            assert query_dominated(index, q) == brute_force_dominated(pts, q)


def test_large_random_build(rng):
    coords = rng.random((100_000, 3))
    index = DominanceIndex.from_arrays(coords)
    assert index.layout_count == expected_layouts(100_000, 3)
    for q in rng.random((20, 3)):
        assert index.query(q) == scan(coords, q)


def test_every_point_reported_by_dominating_query(rng):
    coords = rng.normal(size=(500, 3))
    index = DominanceIndex.from_arrays(coords, np.arange(500) * 7)
    assert index.query(coords.max(axis=0)) == set((np.arange(500) * 7).tolist())


def test_reflexive_and_duplicates(rng):
    coords = np.repeat(rng.random((40, 2)), 3, axis=0)
    index = DominanceIndex.from_arrays(coords)
    for i in range(0, 120, 5):
        found = index.query(coords[i])
        assert i in found
        group = i - i % 3
        assert {group, group + 1, group + 2} <= found


def test_structure_is_read_only(rng):
    index = DominanceIndex.from_arrays(rng.random((300, 3)))
    with pytest.raises(ValueError):
        index.coords[0, 0] = 5.0


def test_small_inputs_skip_layouts():
    assert expected_layouts(2**LEAF_BITS, 3) == 1


coords_strategy = st.integers(1, 80).flatmap(
    lambda n: st.tuples(
        st.integers(2, 4).flatmap(
            lambda d: st.lists(
                st.lists(st.integers(-5, 5), min_size=d, max_size=d), min_size=n, max_size=n
            )
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(coords_strategy, st.data())
def test_property_exact_and_monotone(pts, data):
    coords = np.array(pts[0], dtype=float)
    d = coords.shape[1]
    index = DominanceIndex.from_arrays(coords)
    q1 = np.array(data.draw(st.lists(st.integers(-6, 6), min_size=d, max_size=d)), float)
    bump = np.array(data.draw(st.lists(st.integers(0, 3), min_size=d, max_size=d)), float)
    r1 = index.query(q1)
    assert r1 == scan(coords, q1)
    assert r1 <= index.query(q1 + bump)
