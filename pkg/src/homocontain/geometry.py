"""Convex query objects, affine maps, and support-function evaluation.

Every query object is a closed convex set.  Containment in a canonical
triangle only needs three numbers from it: the minimum x, the minimum y and
the maximum coordinate sum.  All three are support values, so each object
type implements ``support_max`` and the rest is shared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np


class InvalidObject(ValueError):
    """Raised for query objects that violate their invariants."""


def _finite(*values) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not _finite(self.x, self.y):
            raise InvalidObject("point coordinates must be finite")

    def vertices(self) -> np.ndarray:
        return np.array([[self.x, self.y]])

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class Segment:
    p: Point2
    q: Point2

    def vertices(self) -> np.ndarray:
        return np.array([[self.p.x, self.p.y], [self.q.x, self.q.y]])


@dataclass(frozen=True)
class Rect:
    lo: Point2
    hi: Point2

    def __post_init__(self):
        if self.lo.x > self.hi.x or self.lo.y > self.hi.y:
            raise InvalidObject("rectangle corners must satisfy lo <= hi")

    def vertices(self) -> np.ndarray:
        (x1, y1), (x2, y2) = self.lo, self.hi
        return np.array([[x1, y1], [x2, y1], [x2, y2], [x1, y2]])


@dataclass(frozen=True)
class Ellipse:
    """The set ``center + M @ u`` over the closed unit disc."""

    center: Point2
    shape: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        m = np.asarray(self.shape, dtype=np.float64)
        if m.shape != (2, 2):
            raise InvalidObject("ellipse shape must be a 2x2 matrix")
        if not np.all(np.isfinite(m)):
            raise InvalidObject("ellipse shape must be finite")
        if np.linalg.det(m) == 0.0:
            raise InvalidObject("ellipse shape matrix is singular")
        object.__setattr__(self, "shape", tuple(tuple(float(v) for v in row) for row in m))

    @classmethod
    def circle(cls, center: Point2, radius: float) -> "Ellipse":
        if not radius > 0:
            raise InvalidObject("circle radius must be positive")
        return cls(center, ((radius, 0.0), (0.0, radius)))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.shape)

    def boundary(self, samples: int) -> np.ndarray:
        t = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
        unit = np.stack([np.cos(t), np.sin(t)])
        return (self.matrix @ unit).T + [self.center.x, self.center.y]


@dataclass(frozen=True)
class Trapezoid:
    """Trapezoid P(x1,y1) Q(x2,y1) R(x3,y2) S(x4,y2) with horizontal bases.

    PQ is the lower base and SR the upper one, so the vertex order is
    counterclockwise.
    """

    p: Point2
    q: Point2
    r: Point2
    s: Point2

    def __post_init__(self):
        p, q, r, s = self.p, self.q, self.r, self.s
        if p.y != q.y or r.y != s.y:
            raise InvalidObject("trapezoid bases must be horizontal")
        if not p.y < r.y:
            raise InvalidObject("lower base must lie below the upper base")
        if not (p.x < q.x and s.x < r.x):
            raise InvalidObject("trapezoid base endpoints out of order")

    @classmethod
    def from_coords(cls, x1, y1, x2, x3, y2, x4) -> "Trapezoid":
        return cls(Point2(x1, y1), Point2(x2, y1), Point2(x3, y2), Point2(x4, y2))

    def vertices(self) -> np.ndarray:
        return np.array([[v.x, v.y] for v in (self.p, self.q, self.r, self.s)])


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise convex polygon; one or two vertices are allowed."""

    points: tuple[Point2, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise InvalidObject("polygon needs at least one vertex")
        if not all(_finite(p.x, p.y) for p in pts):
            raise InvalidObject("polygon vertices must be finite")
        if len(pts) < 3:
            return
        v = self.vertices()
        e = np.roll(v, -1, axis=0) - v
        scale = float(np.max(np.abs(e))) ** 2
        e = e[np.any(e != 0.0, axis=1)]
        if len(e) < 3:
            return
        nxt = np.roll(e, -1, axis=0)
        cross = e[:, 0] * nxt[:, 1] - e[:, 1] * nxt[:, 0]
        if np.any(cross < -1e-12 * scale):
            raise InvalidObject("polygon is not convex and counterclockwise")
        if np.all(np.abs(cross) <= 1e-12 * scale):
            return  # collinear: a degenerate polygon
        turn = np.arctan2(cross, np.einsum("ij,ij->i", e, nxt)).sum()
        if not math.isclose(float(turn), 2 * math.pi, abs_tol=1e-6):
            raise InvalidObject("polygon winds more than once")

    @classmethod
    def from_array(cls, vertices) -> "ConvexPolygon":
        return cls(tuple(Point2(x, y) for x, y in np.asarray(vertices, dtype=np.float64)))

    def vertices(self) -> np.ndarray:
        return np.array([[p.x, p.y] for p in self.points])


QueryObject = Union[Point2, Segment, Rect, Ellipse, Trapezoid, ConvexPolygon]


@dataclass(frozen=True)
class Affine2:
    """The map ``p -> linear @ p + translate`` with positive determinant."""

    linear: tuple[tuple[float, float], tuple[float, float]]
    translate: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        m = np.asarray(self.linear, dtype=np.float64)
        t = np.asarray(self.translate, dtype=np.float64)
        if m.shape != (2, 2) or t.shape != (2,):
            raise ValueError("affine map needs a 2x2 matrix and a 2-vector")
        if not (np.all(np.isfinite(m)) and np.all(np.isfinite(t))):
            raise ValueError("affine map must be finite")
        if not np.linalg.det(m) > 0:
            raise ValueError("affine map must preserve orientation (det > 0)")
        object.__setattr__(self, "linear", tuple(tuple(float(v) for v in row) for row in m))
        object.__setattr__(self, "translate", (float(t[0]), float(t[1])))

    @classmethod
    def identity(cls) -> "Affine2":
        return cls(((1.0, 0.0), (0.0, 1.0)))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.linear)

    @property
    def offset(self) -> np.ndarray:
        return np.array(self.translate)

    def then(self, other: "Affine2") -> "Affine2":
        """Composition applying ``self`` first, then ``other``."""
        lin = other.matrix @ self.matrix
        t = other.matrix @ self.offset + other.offset
        return Affine2(lin, t)

    def inverse(self) -> "Affine2":
        inv = np.linalg.inv(self.matrix)
        return Affine2(inv, -inv @ self.offset)

    def apply(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=np.float64)
        return pts @ self.matrix.T + self.offset

    def point(self, p: Point2) -> Point2:
        (a, b), (c, d) = self.linear
        tx, ty = self.translate
        return Point2(a * p.x + b * p.y + tx, c * p.x + d * p.y + ty)


def _direction(d) -> tuple[float, float]:
    dx, dy = (float(v) for v in d)
    if dx == 0.0 and dy == 0.0:
        raise ValueError("direction must be nonzero")
    return dx, dy


def support_max(obj: QueryObject, direction) -> float:
    """Maximum of ``p . direction`` over all points ``p`` of ``obj``."""
    dx, dy = _direction(direction)
    if isinstance(obj, Point2):
        return obj.x * dx + obj.y * dy
    if isinstance(obj, Ellipse):
        (a, b), (c, d) = obj.shape
        # |M^T dir|
        reach = math.hypot(a * dx + c * dy, b * dx + d * dy)
        return obj.center.x * dx + obj.center.y * dy + reach
    if isinstance(obj, (Segment, Rect, Trapezoid, ConvexPolygon)):
        v = obj.vertices()
        return float(np.max(v[:, 0] * dx + v[:, 1] * dy))
    raise InvalidObject(f"unsupported query object {type(obj).__name__}")


def query_triple(obj: QueryObject) -> tuple[float, float, float]:
    """Minimum x, minimum y and maximum x + y over ``obj``."""
    if isinstance(obj, Point2):
        return obj.x, obj.y, obj.x + obj.y
    h = -support_max(obj, (-1.0, 0.0))
    k = -support_max(obj, (0.0, -1.0))
    s = support_max(obj, (1.0, 1.0))
    return h, k, s


def apply_affine(obj: QueryObject, a: Affine2) -> QueryObject:
    """Image of ``obj`` under ``a``; the object type is kept where possible."""
    if isinstance(obj, Point2):
        return a.point(obj)
    if isinstance(obj, Segment):
        return Segment(a.point(obj.p), a.point(obj.q))
    if isinstance(obj, Ellipse):
        return Ellipse(a.point(obj.center), a.matrix @ obj.matrix)
    lin = a.linear
    keeps_horizontal = lin[1][0] == 0.0 and lin[1][1] > 0.0
    if isinstance(obj, Rect):
        if keeps_horizontal and lin[0][1] == 0.0:
            return Rect(a.point(obj.lo), a.point(obj.hi))
        if keeps_horizontal:
            (x1, y1), (x2, y2) = obj.lo, obj.hi
            corners = [a.point(Point2(x, y)) for x, y in ((x1, y1), (x2, y1), (x2, y2), (x1, y2))]
            if corners[0].x < corners[1].x and corners[3].x < corners[2].x and corners[0].y < corners[3].y:
                return Trapezoid(*corners)
        return ConvexPolygon(tuple(Point2(x, y) for x, y in a.apply(obj.vertices())))
    if isinstance(obj, Trapezoid):
        if keeps_horizontal:
            return Trapezoid(a.point(obj.p), a.point(obj.q), a.point(obj.r), a.point(obj.s))
        return ConvexPolygon(tuple(Point2(x, y) for x, y in a.apply(obj.vertices())))
    if isinstance(obj, ConvexPolygon):
        return ConvexPolygon(tuple(Point2(x, y) for x, y in a.apply(obj.vertices())))
    raise InvalidObject(f"unsupported query object {type(obj).__name__}")


def halfplane_contains(normal, c: float, obj: QueryObject, eps: float = 0.0) -> bool:
    """True iff ``obj`` lies in the closed half-plane ``normal . p <= c + eps``."""
    if eps < 0:
        raise ValueError("eps must be non-negative")
    return support_max(obj, normal) <= c + eps


def support_many(obj: QueryObject, directions) -> np.ndarray:
    """Vectorized :func:`support_max` over an ``(m, 2)`` array of directions."""
    dirs = np.asarray(directions, dtype=np.float64).reshape(-1, 2)
    if isinstance(obj, Ellipse):
        c = np.array([obj.center.x, obj.center.y])
        return dirs @ c + np.linalg.norm(dirs @ obj.matrix, axis=1)
    if isinstance(obj, (Point2, Segment, Rect, Trapezoid, ConvexPolygon)):
        return np.max(dirs @ obj.vertices().T, axis=1)
    raise InvalidObject(f"unsupported query object {type(obj).__name__}")
