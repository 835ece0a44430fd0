import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homocontain.generate import QUERY_KINDS, random_family, random_query
from homocontain.geometry import (
    Affine2,
    ConvexPolygon,
    Ellipse,
    InvalidObject,
    Point2,
    Rect,
    Segment,
    Trapezoid,
    apply_affine,
    halfplane_contains,
    query_triple,
    support_many,
    support_max,
)

TRAP = Trapezoid.from_coords(1, 1, 4, 3, 2, 2)  # P(1,1) Q(4,1) R(3,2) S(2,2)


def test_circle_support_reaches_tangent_point():
    circle = Ellipse.circle(Point2(3, 4), 1)
    assert support_max(circle, (1, 1)) == pytest.approx(7 + math.sqrt(2), abs=1e-12)
    tangent = (3 + 1 / math.sqrt(2), 4 + 1 / math.sqrt(2))
    assert sum(tangent) == pytest.approx(8.41421356, abs=1e-8)


def test_segment_support():
    assert support_max(Segment(Point2(1, 1), Point2(2, 3)), (1, 1)) == 5


def test_ellipse_support_against_sampling():
    ellipse = Ellipse(Point2(0, 0), ((2, 0), (0, 1)))
    exact = support_max(ellipse, (1, 1))
    sampled = float(np.max(ellipse.boundary(1_000_000).sum(axis=1)))
    assert exact == pytest.approx(math.sqrt(5), abs=1e-12)
    assert 0 <= exact - sampled < 1e-5


def test_ellipse_support_random_directions(rng):
    for _ in range(5):
        ellipse = Ellipse(Point2(*rng.normal(size=2)), rng.normal(size=(2, 2)))
        boundary = ellipse.boundary(1_000_000)
        for d in rng.normal(size=(3, 2)):
            d /= np.linalg.norm(d)
            exact = support_max(ellipse, d)
            sampled = float(np.max(boundary @ d))
            assert exact >= sampled - 1e-12
            assert exact - sampled < 1e-5 * max(1.0, np.linalg.norm(ellipse.matrix))


def test_zero_direction():
    with pytest.raises(ValueError):
        support_max(Point2(0, 0), (0, 0))
    with pytest.raises(ValueError):
        halfplane_contains((0, 0), 1.0, Point2(0, 0))


def test_query_triples():
    assert query_triple(Point2(5, 5)) == (5, 5, 10)
    h, k, s = query_triple(Ellipse.circle(Point2(3, 4), 1))
    assert (h, k) == (2, 3)
    assert s == pytest.approx(7 + math.sqrt(2), abs=1e-12)
    assert query_triple(TRAP) == (1, 1, 5)
    assert query_triple(Rect(Point2(1, 2), Point2(3, 5))) == (1, 2, 8)


def test_rect_triple_matches_its_diagonal():
    rect = Rect(Point2(-1, 2), Point2(3, 7))
    assert query_triple(rect) == query_triple(Segment(rect.lo, rect.hi)) == (-1, 2, 10)


def test_affine_identity_and_scaling():
    ident = Affine2.identity()
    for obj in (Point2(1, 2), TRAP, Ellipse.circle(Point2(0, 0), 1), Rect(Point2(0, 0), Point2(1, 1))):
        assert apply_affine(obj, ident) == obj
    scaled = apply_affine(Ellipse.circle(Point2(0, 0), 1), Affine2(((0.5, 0), (0, 1))))
    assert isinstance(scaled, Ellipse)
    assert scaled.shape == ((0.5, 0.0), (0.0, 1.0))


def test_shear_keeps_trapezoid():
    sheared = apply_affine(TRAP, Affine2(((1, -1), (0, 1))))  # x' = x - y / m with m = 1
    assert isinstance(sheared, Trapezoid)
    assert sheared.vertices().tolist() == [[0, 1], [3, 1], [1, 2], [0, 2]]


def test_rect_image_types():
    rect = Rect(Point2(0, 0), Point2(2, 1))
    assert isinstance(apply_affine(rect, Affine2(((2, 0), (0, 3)), (1, 1))), Rect)
    assert isinstance(apply_affine(rect, Affine2(((1, 0.5), (0, 1)))), Trapezoid)
    theta = 0.3
    rot = Affine2(((math.cos(theta), -math.sin(theta)), (math.sin(theta), math.cos(theta))))
    assert isinstance(apply_affine(rect, rot), ConvexPolygon)
    flat = Rect(Point2(0, 0), Point2(2, 0))
    assert isinstance(apply_affine(flat, rot), ConvexPolygon)


def test_degenerate_map_rejected():
    with pytest.raises(ValueError):
        Affine2(((1, 0), (0, 0)))
    with pytest.raises(ValueError):
        Affine2(((1, 0), (0, -1)))


def test_halfplane_contains():
    assert halfplane_contains((1, 1), 0.0, Point2(0, 0))
    assert not halfplane_contains((1, 0), 0.5, Ellipse.circle(Point2(0, 0), 1))


def test_halfplane_polygons_vs_vertex_scan(rng):
    verts = random_family(rng, 20)
    for _ in range(200):
        obj = random_query(rng, "polygon", verts)
        n = rng.normal(size=2)
        c = float(rng.normal() * 5)
        assert halfplane_contains(n, c, obj) == bool(np.all(obj.vertices() @ n <= c))


def test_invalid_objects():
    with pytest.raises(InvalidObject):
        Rect(Point2(1, 0), Point2(0, 1))
    with pytest.raises(InvalidObject):
        Ellipse(Point2(0, 0), ((1, 2), (2, 4)))
    with pytest.raises(InvalidObject):
        Trapezoid.from_coords(0, 0, 2, 1, 0, 3)  # upper base below lower
    with pytest.raises(InvalidObject):
        ConvexPolygon.from_array([[0, 0], [0, 1], [1, 0]])  # clockwise
    with pytest.raises(InvalidObject):
        ConvexPolygon.from_array([[0, 0], [2, 0], [1, 1], [2, 2], [0, 2]])
    with pytest.raises(InvalidObject):
        Point2(float("nan"), 0)
    with pytest.raises(InvalidObject):
        Ellipse.circle(Point2(0, 0), 0)


def test_degenerate_objects_are_legal():
    assert query_triple(Segment(Point2(1, 1), Point2(1, 1))) == (1, 1, 2)
    assert query_triple(Rect(Point2(0, 1), Point2(3, 1))) == (0, 1, 4)
    assert query_triple(ConvexPolygon.from_array([[0, 0], [1, 1], [2, 2]])) == (0, 0, 4)


def random_affine(rng):
    while True:
        m = rng.normal(size=(2, 2))
        if np.linalg.det(m) > 0.1:
            return Affine2(m, rng.normal(size=2))


def test_support_affine_covariance(rng):
    for kind in QUERY_KINDS:
        verts = random_family(rng, 10)
        for _ in range(200):
            obj = random_query(rng, kind, verts)
            a = random_affine(rng)
            d = rng.normal(size=2)
            lhs = support_max(apply_affine(obj, a), d)
            rhs = support_max(obj, a.matrix.T @ d) + a.offset @ d
            assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


def test_support_many_matches_scalar(rng):
    verts = random_family(rng, 10)
    dirs = rng.normal(size=(16, 2))
    for kind in QUERY_KINDS:
        obj = random_query(rng, kind, verts)
        expected = [support_max(obj, d) for d in dirs]
        np.testing.assert_allclose(support_many(obj, dirs), expected, rtol=1e-13, atol=1e-13)


coord = st.floats(-10, 10, allow_nan=False)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=3, max_size=10), st.data())
def test_triple_monotone_under_inclusion(points, data):
    from scipy.spatial import ConvexHull, QhullError

    pts = np.array(points)
    try:
        hull = ConvexHull(pts)
    except (QhullError, ValueError):
        return
    outer = ConvexPolygon.from_array(pts[hull.vertices])
    w = np.array(data.draw(st.lists(st.floats(0.01, 1), min_size=len(pts), max_size=len(pts))))
    u = np.array(data.draw(st.lists(st.floats(0.01, 1), min_size=len(pts), max_size=len(pts))))
    inner = Segment(Point2(*(w / w.sum()) @ pts), Point2(*(u / u.sum()) @ pts))
    dirs = np.array([[math.cos(t), math.sin(t)] for t in np.linspace(0, 2 * math.pi, 64)])
    assert np.all(support_many(inner, dirs) <= support_many(outer, dirs) + 1e-9)
    h1, k1, s1 = query_triple(inner)
    h2, k2, s2 = query_triple(outer)
    assert h1 >= h2 - 1e-9 and k1 >= k2 - 1e-9 and s1 <= s2 + 1e-9
