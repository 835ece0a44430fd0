import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homocontain.generate import random_intervals
from homocontain.intervals import (
    Interval,
    IntervalIndex,
    build_intervals,
    contained_in,
    containing,
    overlapping,
    stab,
)

SAMPLE = [Interval(1, 4, 0), Interval(2, 3, 1), Interval(5, 7, 2)]


@pytest.fixture
def sample():
    return build_intervals(SAMPLE)


def test_empty():
    index = build_intervals([])
    assert len(index) == 0
    assert stab(index, 1.0) == set()
    assert overlapping(index, 0, 10) == set()


def test_forward_points(sample):
    assert sample.forward.coords.tolist() == [[1, -4], [2, -3], [5, -7]]
    assert sample.reverse.coords.tolist() == [[-1, 4], [-2, 3], [-5, 7]]


def test_stab(sample):
    assert stab(sample, 2) == {0, 1}
    assert stab(sample, 4) == {0}
    assert stab(sample, 4.5) == set()


def test_containing(sample):
    assert containing(sample, 1.5, 3.5) == {0}
    assert 1 in containing(sample, 2, 3)
    assert containing(sample, 2.5, 2.5) == stab(sample, 2.5)
    assert containing(sample, 9, 10) == set()


def test_contained_in(sample):
    assert contained_in(sample, 2, 5) == {1}
    assert contained_in(sample, 0, 100) == {0, 1, 2}
    point = build_intervals([Interval(3, 3, 0), Interval(3, 4, 1)])
    assert contained_in(point, 3, 3) == {0}


def test_overlapping(sample):
    assert overlapping(sample, 2, 5) == {0, 1, 2}
    assert overlapping(sample, 4.2, 4.8) == set()
    assert 2 in overlapping(sample, 5, 7)


def test_errors(sample):
    with pytest.raises(ValueError):
        Interval(3, 2, 0)
    with pytest.raises(ValueError):
        IntervalIndex([3], [2])
    with pytest.raises(ValueError):
        build_intervals([Interval(1, 2, 0), Interval(1, 3, 0)])
    for op in (containing, contained_in, overlapping):
        with pytest.raises(ValueError):
            op(sample, 3, 2)
    with pytest.raises(ValueError):
        stab(sample, float("inf"))


def test_query_counts(sample):
    before = sample.queries_issued
    sample.overlapping(0, 3)
    assert sample.queries_issued - before == 3
    for call in (lambda: sample.stab(1), lambda: sample.containing(1, 2), lambda: sample.contained_in(1, 2)):
        before = sample.queries_issued
        call()
        assert sample.queries_issued - before == 1


def test_random_against_scan(rng):
    lo, hi = random_intervals(rng, 500)
    index = IntervalIndex(lo, hi)
    for x1, x2 in np.sort(rng.uniform(-5, 110, size=(200, 2)), axis=1):
        assert index.stab(x1) == set(np.nonzero((lo <= x1) & (x1 <= hi))[0].tolist())
        assert index.containing(x1, x2) == set(np.nonzero((lo <= x1) & (x2 <= hi))[0].tolist())
        assert index.contained_in(x1, x2) == set(np.nonzero((x1 <= lo) & (hi <= x2))[0].tolist())
        assert index.overlapping(x1, x2) == set(np.nonzero((lo <= x2) & (x1 <= hi))[0].tolist())


ends = st.integers(-20, 20)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(ends, ends), max_size=60), ends, ends)
def test_property_relations(pairs, a, b):
    pairs = [(min(p), max(p)) for p in pairs]
    x1, x2 = min(a, b), max(a, b)
    index = IntervalIndex([p[0] for p in pairs], [p[1] for p in pairs])
    over = index.overlapping(x1, x2)
    inside = index.containing(x1, x2)
    assert over >= inside | index.contained_in(x1, x2)
    assert inside <= index.stab(x1) & index.stab(x2)
    assert over == {i for i, (lo, hi) in enumerate(pairs) if lo <= x2 and x1 <= hi}
