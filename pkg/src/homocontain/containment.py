"""Containment queries over a family of homothetic triangles.

The family is first mapped (rotate, shear, scale) into a frame where every
member is an isosceles right triangle with its right angle at the
bottom-left.  Such a triangle ``(a, b, alpha)`` contains a convex object iff
the object's minimum x is at least ``a``, its minimum y is at least ``b``
and its maximum coordinate sum is at most ``a + b + alpha``.  Storing
``(a, b, -a - b - alpha)`` turns that test into 3-d dominance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dominance import DominanceIndex
from .geometry import (
    Affine2,
    Point2,
    QueryObject,
    Rect,
    Segment,
    Trapezoid,
    apply_affine,
    halfplane_contains,
    query_triple,
    support_many,
)

DEFAULT_EPS = 1e-9


class FamilyError(ValueError):
    """A triangle family that cannot be canonicalized.

    ``index`` is the position of the first offending triangle in the input.
    """

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


class NotHomothetic(FamilyError):
    pass


class Degenerate(FamilyError):
    pass


DegenerateTriangle = Degenerate


@dataclass(frozen=True)
class TriangleRaw:
    vertices: tuple[Point2, Point2, Point2]
    id: int

    @classmethod
    def from_coords(cls, coords, id: int) -> "TriangleRaw":
        x1, y1, x2, y2, x3, y3 = (float(c) for c in np.asarray(coords).reshape(-1))
        return cls((Point2(x1, y1), Point2(x2, y2), Point2(x3, y3)), id)

    def array(self) -> np.ndarray:
        return np.array([[p.x, p.y] for p in self.vertices])


@dataclass(frozen=True)
class CanonicalTriangle:
    a: float
    b: float
    alpha: float

    def corners(self) -> np.ndarray:
        a, b, al = self.a, self.b, self.alpha
        return np.array([[a, b], [a + al, b], [a, b + al]])


@dataclass(frozen=True)
class FamilyFrame:
    """Affine map taking the family into canonical position.

    ``map`` is ``scale @ shear @ rotate``.  ``rotation_angle`` turns the
    reference triangle's bottom side onto the +x axis, ``shear_slope`` is the
    slope of its left side after rotation (``inf`` when already vertical), and
    ``scale_factors`` is the diagonal applied last.
    """

    map: Affine2
    rotation_angle: float
    shear_slope: float
    scale_factors: tuple[float, float]


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _twice_area(v: np.ndarray) -> np.ndarray:
    e1 = v[..., 1, :] - v[..., 0, :]
    e2 = v[..., 2, :] - v[..., 0, :]
    return e1[..., 0] * e2[..., 1] - e1[..., 1] * e2[..., 0]


def _degenerate_mask(verts: np.ndarray, eps: float) -> np.ndarray:
    edges = np.roll(verts, -1, axis=1) - verts
    longest = np.max(np.einsum("nij,nij->ni", edges, edges), axis=1)
    return ~(np.abs(_twice_area(verts)) > eps * longest)


def _reference_frame(tri: np.ndarray) -> FamilyFrame:
    v = tri.copy()
    if _twice_area(v) < 0:
        v = v[[0, 2, 1]]
    edges = np.roll(v, -1, axis=0) - v
    angles = np.arctan2(edges[:, 1], edges[:, 0])
    first = int(np.argmin(np.abs(angles)))
    v = np.roll(v, -first, axis=0)

    theta = -float(angles[first])
    rot = _rotation(theta)
    u = (v - v[0]) @ rot.T
    base = u[1, 0]
    px, py = u[2]
    shear = np.array([[1.0, -px / py], [0.0, 1.0]])
    slope = py / px if px != 0.0 else math.inf
    scale = np.array([[py / base, 0.0], [0.0, 1.0]])
    linear = scale @ shear @ rot
    return FamilyFrame(Affine2(linear), theta + 0.0, float(slope), (float(py / base), 1.0))


def canonicalize_arrays(verts, eps: float = DEFAULT_EPS) -> tuple[FamilyFrame, np.ndarray]:
    """Vectorized canonicalization of an ``(n, 3, 2)`` vertex array.

    Returns the frame and an ``(n, 3)`` array of ``(a, b, alpha)`` rows.
    """
    verts = np.asarray(verts, dtype=np.float64)
    if verts.ndim != 3 or verts.shape[1:] != (3, 2) or len(verts) == 0:
        raise ValueError("need a nonempty (n, 3, 2) array of triangle vertices")
    if not np.all(np.isfinite(verts)):
        bad = int(np.argmax(~np.all(np.isfinite(verts), axis=(1, 2))))
        raise DegenerateTriangle(bad, f"triangle {bad} has non-finite coordinates")

    degenerate = _degenerate_mask(verts, eps)
    if degenerate[0]:
        raise DegenerateTriangle(0, "triangle 0 has collinear vertices")
    frame = _reference_frame(verts[0])

    w = verts @ frame.map.matrix.T
    lo = w.min(axis=1)
    hi = w.max(axis=1)
    a, b = lo[:, 0], lo[:, 1]
    sums = w.sum(axis=2)
    alpha = sums.max(axis=1) - a - b
    corners = np.stack(
        [
            lo,
            np.stack([a + alpha, b], axis=1),
            np.stack([a, b + alpha], axis=1),
        ],
        axis=1,
    )
    tol = eps * np.maximum(alpha, np.max(np.abs(w), axis=(1, 2)))
    # every canonical corner must be hit by some mapped vertex
    gaps = np.max(np.abs(w[:, :, None, :] - corners[:, None, :, :]), axis=3)
    matched = np.all(gaps.min(axis=1) <= tol[:, None], axis=1)
    extents_ok = np.all(np.abs(hi - lo - alpha[:, None]) <= tol[:, None], axis=1)
    bad = degenerate | ~(matched & extents_ok & (alpha > 0))
    if bad.any():
        i = int(np.argmax(bad))
        if degenerate[i]:
            raise DegenerateTriangle(i, f"triangle {i} has collinear vertices")
        raise NotHomothetic(i, f"triangle {i} is not a positive homothet of triangle 0")
    return frame, np.stack([a, b, alpha], axis=1)


def canonicalize_family(
    triangles: Sequence[TriangleRaw], eps: float = DEFAULT_EPS
) -> tuple[FamilyFrame, list[CanonicalTriangle]]:
    if not triangles:
        raise ValueError("triangle family is empty")
    verts = np.stack([t.array() for t in triangles])
    frame, canon = canonicalize_arrays(verts, eps)
    return frame, [CanonicalTriangle(*map(float, row)) for row in canon]


def relative_tol(eps: float, *values: float) -> float:
    return eps * max(1.0, *(abs(v) for v in values))


class ContainmentIndex:
    """Reports every family triangle containing a query object.

    Immutable after construction.  Stored dominance point ``i`` is exactly
    ``(a_i, b_i, -a_i - b_i - alpha_i)`` in the canonical frame.
    """

    def __init__(self, frame: FamilyFrame, points, ids, eps: float = DEFAULT_EPS):
        points = np.asarray(points, dtype=np.float64).reshape(-1, 3)
        self.frame = frame
        self.eps = float(eps)
        self.d3 = DominanceIndex(points, ids, 3)

    @classmethod
    def from_arrays(cls, verts, ids=None, eps: float = DEFAULT_EPS) -> "ContainmentIndex":
        frame, canon = canonicalize_arrays(verts, eps)
        a, b, alpha = canon.T
        points = np.stack([a, b, -a - b - alpha], axis=1)
        if ids is None:
            ids = np.arange(len(points))
        return cls(frame, points, ids, eps)

    def __len__(self) -> int:
        return self.d3.size

    @property
    def points(self) -> np.ndarray:
        return self.d3.coords

    @property
    def ids(self) -> np.ndarray:
        return self.d3.ids

    def canonical(self) -> list[CanonicalTriangle]:
        return [CanonicalTriangle(a, b, -c - a - b) for a, b, c in self.points.tolist()]

    def query_vector(self, obj: QueryObject) -> np.ndarray:
        """Dominance query point for ``obj``, widened by the tolerance."""
        h, k, s = query_triple(apply_affine(obj, self.frame.map))
        tol = relative_tol(self.eps, h, k, s)
        return np.array([h + tol, k + tol, -s + tol])

    def query_ids(self, obj: QueryObject) -> np.ndarray:
        return self.d3.query_ids(self.query_vector(obj))

    def query(self, obj: QueryObject) -> set[int]:
        return set(self.query_ids(obj).tolist())

    def query_point(self, p: Point2) -> set[int]:
        return self.query(p)


def build_index(triangles: Sequence[TriangleRaw], eps: float = DEFAULT_EPS) -> ContainmentIndex:
    if not triangles:
        raise ValueError("triangle family is empty")
    verts = np.stack([t.array() for t in triangles])
    ids = np.array([t.id for t in triangles], dtype=np.int64)
    return ContainmentIndex.from_arrays(verts, ids, eps)


def query(index: ContainmentIndex, obj: QueryObject) -> set[int]:
    return index.query(obj)


def query_point(index: ContainmentIndex, p: Point2) -> set[int]:
    return index.query_point(p)


# Per-object query points for canonical-frame triangles.  They are the
# case-by-case derivations; ContainmentIndex uses query_triple instead and
# these serve as differential checks.


def segment_query_point(seg: Segment) -> tuple[float, float, float]:
    p, q = seg.p, seg.q
    if (q.x, q.y) < (p.x, p.y):
        p, q = q, p
    x1, y1, x2, y2 = p.x, p.y, q.x, q.y
    if y1 == y2:
        return x1, y1, -x2 - y1
    if x1 == x2:
        lo, hi = min(y1, y2), max(y1, y2)
        return x1, lo, -x1 - hi
    if y2 > y1:
        return x1, y1, -x2 - y2
    # negative slope: the endpoint with the larger coordinate sum bounds the hypotenuse
    slope = (y2 - y1) / (x2 - x1)
    if slope >= -1.0:
        return x1, y2, -x2 - y2
    return x1, y2, -x1 - y1


def rect_query_point(rect: Rect) -> tuple[float, float, float]:
    (x1, y1), (x2, y2) = rect.lo, rect.hi
    return x1, y1, -x2 - y2


def circle_query_point(center: Point2, radius: float) -> tuple[float, float, float]:
    h, k = center.x, center.y
    return h - radius, k - radius, -(h + k + math.sqrt(2.0) * radius)


def trapezoid_query_point(trap: Trapezoid) -> tuple[float, float, float]:
    x1, y1 = trap.p.x, trap.p.y
    x2 = trap.q.x
    x3, y2 = trap.r.x, trap.r.y
    x4 = trap.s.x
    return min(x1, x4), y1, min(-x3 - y2, -x2 - y1)


def halfplanes_many(verts) -> tuple[np.ndarray, np.ndarray]:
    """Unit outward normals ``(n, 3, 2)`` and offsets ``(n, 3)`` for many triangles.

    Triangle ``i`` is the set of ``p`` with ``normals[i] @ p <= offsets[i]``.
    """
    v = np.array(verts, dtype=np.float64).reshape(-1, 3, 2)
    cw = _twice_area(v) < 0
    v[cw] = v[cw][:, [0, 2, 1]]
    e = np.roll(v, -1, axis=1) - v
    normals = np.stack([e[..., 1], -e[..., 0]], axis=2)
    lengths = np.linalg.norm(normals, axis=2)
    if np.any(lengths == 0):
        raise Degenerate(int(np.argmax(np.any(lengths == 0, axis=1))), "coincident vertices")
    normals /= lengths[..., None]
    return normals, np.einsum("nij,nij->ni", normals, v)


def triangle_halfplanes(tri) -> tuple[np.ndarray, np.ndarray]:
    """Unit outward normals and offsets so the triangle is ``normals @ p <= offsets``."""
    v = tri.array() if isinstance(tri, TriangleRaw) else tri
    normals, offsets = halfplanes_many(v)
    return normals[0], offsets[0]


def oracle_contains(tri: TriangleRaw, obj: QueryObject, eps: float = DEFAULT_EPS) -> bool:
    """Closed containment decided from the triangle's three half-planes."""
    v = tri.array()
    if _degenerate_mask(v[None], eps)[0]:
        raise DegenerateTriangle(0, "triangle has collinear vertices")
    normals, offsets = triangle_halfplanes(v)
    return all(
        halfplane_contains(n, c, obj, relative_tol(eps, c)) for n, c in zip(normals, offsets)
    )


def oracle_filter(verts, obj: QueryObject, eps: float = DEFAULT_EPS, ids=None) -> set[int]:
    """Ids of all triangles in ``verts`` passing :func:`oracle_contains`, vectorized."""
    normals, offsets = halfplanes_many(verts)
    support = support_many(obj, normals.reshape(-1, 2)).reshape(offsets.shape)
    tol = eps * np.maximum(1.0, np.abs(offsets))
    inside = np.all(support <= offsets + tol, axis=1)
    if ids is None:
        ids = np.arange(len(offsets))
    return set(np.asarray(ids)[inside].tolist())
