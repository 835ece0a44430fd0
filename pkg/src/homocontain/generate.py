"""Seeded random families and query objects for verification and benchmarks."""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import ConvexHull

from .containment import ContainmentIndex, halfplanes_many, relative_tol
from .geometry import (
    ConvexPolygon,
    Ellipse,
    Point2,
    QueryObject,
    Rect,
    Segment,
    Trapezoid,
    apply_affine,
    query_triple,
    support_many,
)

QUERY_KINDS = ("point", "segment", "rect", "circle", "ellipse", "trapezoid", "polygon")

UNIT_TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


def random_shape_matrix(rng: np.random.Generator) -> np.ndarray:
    """Rotation, shear (slope in +-[0.2, 5]) and leg ratio in [0.2, 5], composed."""
    theta = rng.uniform(0.0, 2.0 * math.pi)
    slope = rng.uniform(0.2, 5.0) * rng.choice([-1.0, 1.0])
    ratio = math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
    c, s = math.cos(theta), math.sin(theta)
    rot = np.array([[c, -s], [s, c]])
    unshear = np.array([[1.0, 1.0 / slope], [0.0, 1.0]])
    return rot @ unshear @ np.diag([ratio, 1.0])


def random_family(rng: np.random.Generator, n: int, shape=None, spread: float = 10.0) -> np.ndarray:
    """``(n, 3, 2)`` vertices of positive homothets of one random triangle.

    Vertex order is shuffled per triangle.
    """
    if shape is None:
        shape = random_shape_matrix(rng)
    base = UNIT_TRIANGLE @ np.asarray(shape).T
    scales = np.exp(rng.uniform(math.log(0.2), math.log(3.0), size=n))
    shifts = rng.uniform(-spread / 2, spread / 2, size=(n, 2))
    verts = scales[:, None, None] * base[None] + shifts[:, None, :]
    order = np.argsort(rng.random((n, 3)), axis=1)
    return np.take_along_axis(verts, order[:, :, None], axis=1)


def _anchor(rng, verts):
    if rng.random() < 0.75:
        i = rng.integers(len(verts))
        w = rng.dirichlet(np.ones(3))
        tri = verts[i]
        size = float(np.max(np.ptp(tri, axis=0)))
        return w @ tri, size * rng.uniform(0.01, 0.4)
    lo = verts.reshape(-1, 2).min(axis=0)
    hi = verts.reshape(-1, 2).max(axis=0)
    return rng.uniform(lo, hi), rng.uniform(0.01, 1.0)


def random_query(rng: np.random.Generator, kind: str, verts: np.ndarray) -> QueryObject:
    (cx, cy), r = _anchor(rng, verts)
    if kind == "point":
        return Point2(cx, cy)
    if kind == "segment":
        flavour = rng.random()
        d = rng.normal(size=2)
        if flavour < 0.15:
            d[1] = 0.0
        elif flavour < 0.3:
            d[0] = 0.0
        d = d / max(np.linalg.norm(d), 1e-12) * r
        return Segment(Point2(cx - d[0], cy - d[1]), Point2(cx + d[0], cy + d[1]))
    if kind == "rect":
        w, h = rng.uniform(0.0, r, size=2)
        return Rect(Point2(cx - w, cy - h), Point2(cx + w, cy + h))
    if kind == "circle":
        return Ellipse.circle(Point2(cx, cy), r * rng.uniform(0.1, 1.0))
    if kind == "ellipse":
        while True:
            m = rng.normal(size=(2, 2)) * r / 2
            if abs(np.linalg.det(m)) > 0.05 * r * r:
                return Ellipse(Point2(cx, cy), m)
    if kind == "trapezoid":
        h = r * rng.uniform(0.05, 1.0)
        lo = np.sort(cx + rng.uniform(-r, r, size=2))
        up = np.sort(cx + rng.uniform(-r, r, size=2))
        if lo[0] == lo[1] or up[0] == up[1]:
            return random_query(rng, kind, verts)
        return Trapezoid.from_coords(lo[0], cy - h, lo[1], up[1], cy + h, up[0])
    if kind == "polygon":
        pts = np.array([cx, cy]) + rng.normal(size=(int(rng.integers(3, 9)), 2)) * r / 2
        try:
            hull = ConvexHull(pts)
        except Exception:
            return random_query(rng, kind, verts)
        return ConvexPolygon.from_array(pts[hull.vertices])
    raise ValueError(f"unknown query kind {kind!r}")


def near_boundary(
    index: ContainmentIndex, verts: np.ndarray, obj: QueryObject, factor: float = 2.0
) -> bool:
    """True when some containment constraint is within ``factor * eps`` of tight.

    Checked both for the original triangles' half-planes and for the three
    canonical-frame inequalities, since the two decision paths apply the
    tolerance in different coordinates.
    """
    eps = index.eps
    normals, offsets = halfplanes_many(verts)
    margins = offsets - support_many(obj, normals.reshape(-1, 2)).reshape(offsets.shape)
    if np.any(np.abs(margins) <= factor * eps * np.maximum(1.0, np.abs(offsets))):
        return True
    h, k, s = query_triple(apply_affine(obj, index.frame.map))
    tol = factor * relative_tol(eps, h, k, s)
    pts = index.points
    gaps = np.concatenate([h - pts[:, 0], k - pts[:, 1], -s - pts[:, 2]])
    return bool(np.any(np.abs(gaps) <= tol))


def random_simplex_shape(rng: np.random.Generator, d: int) -> np.ndarray:
    while True:
        m = rng.normal(size=(d, d))
        if np.linalg.det(m) < 0:
            m[:, 0] = -m[:, 0]
        if np.linalg.cond(m) < 30:
            return m


def random_simplex_family(rng: np.random.Generator, n: int, d: int, shape=None) -> np.ndarray:
    if shape is None:
        shape = random_simplex_shape(rng, d)
    base = np.vstack([np.zeros(d), np.eye(d)]) @ np.asarray(shape).T
    scales = np.exp(rng.uniform(math.log(0.2), math.log(3.0), size=n))
    shifts = rng.uniform(-3.0, 3.0, size=(n, d))
    verts = scales[:, None, None] * base[None] + shifts[:, None, :]
    order = np.argsort(rng.random((n, d + 1)), axis=1)
    return np.take_along_axis(verts, order[:, :, None], axis=1)


def random_simplex_points(rng: np.random.Generator, verts: np.ndarray, count: int) -> np.ndarray:
    d = verts.shape[2]
    out = np.empty((count, d))
    lo = verts.reshape(-1, d).min(axis=0)
    hi = verts.reshape(-1, d).max(axis=0)
    for i in range(count):
        if rng.random() < 0.7:
            simplex = verts[rng.integers(len(verts))]
            out[i] = rng.dirichlet(np.ones(d + 1)) @ simplex
        else:
            out[i] = rng.uniform(lo, hi)
    return out


def random_intervals(rng: np.random.Generator, n: int, span: float = 100.0):
    lo = rng.uniform(0.0, span, size=n)
    length = rng.exponential(span / 10, size=n)
    length[rng.random(n) < 0.05] = 0.0
    return lo, lo + length
