"""Line-oriented text formats for triangles, queries, intervals and simplexes.

Blank lines are ignored and ``#`` starts a comment.  Triangle, interval and
simplex ids are the 0-based physical line numbers of their records.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Iterator

import numpy as np

from .geometry import ConvexPolygon, Ellipse, InvalidObject, Point2, QueryObject, Rect, Segment, Trapezoid


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based for messages."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def records(lines: Iterable[str]) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(0-based line number, tokens)`` for every non-empty record."""
    for number, raw in enumerate(lines):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


def _floats(number: int, tokens: list[str]) -> list[float]:
    try:
        values = [float(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(number + 1, str(exc)) from None
    if not all(math.isfinite(v) for v in values):
        raise ParseError(number + 1, "non-finite number")
    return values


def read_triangles(lines: Iterable[str]) -> tuple[np.ndarray, np.ndarray]:
    verts, ids = [], []
    for number, tokens in records(lines):
        if len(tokens) != 6:
            raise ParseError(number + 1, f"expected 6 numbers, got {len(tokens)}")
        verts.append(_floats(number, tokens))
        ids.append(number)
    return np.array(verts, dtype=np.float64).reshape(-1, 3, 2), np.array(ids, dtype=np.int64)


ARITY = {"point": 2, "segment": 4, "rect": 4, "circle": 3, "ellipse": 6, "trapezoid": 8}


def parse_query(tokens: list[str], number: int = 0) -> QueryObject:
    """Build a query object from one keyword-prefixed record."""
    kind, args = tokens[0].lower(), tokens[1:]
    if kind == "polygon":
        if not args:
            raise ParseError(number + 1, "polygon needs a vertex count")
        try:
            k = int(args[0])
        except ValueError:
            raise ParseError(number + 1, f"bad vertex count {args[0]!r}") from None
        if k < 1 or len(args) != 1 + 2 * k:
            raise ParseError(number + 1, f"polygon with {k} vertices needs {2 * k} coordinates")
        vals = _floats(number, args[1:])
    elif kind in ARITY:
        if len(args) != ARITY[kind]:
            raise ParseError(number + 1, f"{kind} needs {ARITY[kind]} numbers, got {len(args)}")
        vals = _floats(number, args)
    else:
        raise ParseError(number + 1, f"unknown query kind {tokens[0]!r}")
    try:
        if kind == "point":
            return Point2(*vals)
        if kind == "segment":
            return Segment(Point2(*vals[:2]), Point2(*vals[2:]))
        if kind == "rect":
            return Rect(Point2(*vals[:2]), Point2(*vals[2:]))
        if kind == "circle":
            return Ellipse.circle(Point2(*vals[:2]), vals[2])
        if kind == "ellipse":
            m11, m12, m21, m22 = vals[2:]
            return Ellipse(Point2(*vals[:2]), ((m11, m12), (m21, m22)))
        if kind == "trapezoid":
            pts = [Point2(vals[i], vals[i + 1]) for i in range(0, 8, 2)]
            return Trapezoid(*pts)
        return ConvexPolygon.from_array(np.reshape(vals, (-1, 2)))
    except InvalidObject as exc:
        raise ParseError(number + 1, str(exc)) from None


def format_query(obj: QueryObject) -> str:
    """Inverse of :func:`parse_query` (uses ``repr`` floats, so it round-trips)."""
    def nums(values):
        return " ".join(repr(float(v)) for v in values)

    if isinstance(obj, Point2):
        return f"point {nums(obj)}"
    if isinstance(obj, Segment):
        return f"segment {nums([*obj.p, *obj.q])}"
    if isinstance(obj, Rect):
        return f"rect {nums([*obj.lo, *obj.hi])}"
    if isinstance(obj, Ellipse):
        (a, b), (c, d) = obj.shape
        if a == d and b == 0.0 and c == 0.0 and a > 0:
            return f"circle {nums([*obj.center, a])}"
        return f"ellipse {nums([*obj.center, a, b, c, d])}"
    if isinstance(obj, Trapezoid):
        return f"trapezoid {nums(obj.vertices().reshape(-1))}"
    if isinstance(obj, ConvexPolygon):
        return f"polygon {len(obj.points)} {nums(obj.vertices().reshape(-1))}"
    raise TypeError(f"unsupported query object {type(obj).__name__}")


def read_intervals(lines: Iterable[str]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    lo, hi, ids = [], [], []
    for number, tokens in records(lines):
        if len(tokens) != 2:
            raise ParseError(number + 1, f"expected 'lo hi', got {len(tokens)} fields")
        a, b = _floats(number, tokens)
        if a > b:
            raise ParseError(number + 1, "interval has lo > hi")
        lo.append(a)
        hi.append(b)
        ids.append(number)
    return np.array(lo), np.array(hi), np.array(ids, dtype=np.int64)


INTERVAL_QUERIES = {"stab": 1, "containing": 2, "contained": 2, "overlap": 2}


def parse_interval_query(tokens: list[str], number: int = 0) -> tuple[str, list[float]]:
    kind = tokens[0].lower()
    if kind not in INTERVAL_QUERIES:
        raise ParseError(number + 1, f"unknown interval query {tokens[0]!r}")
    if len(tokens) - 1 != INTERVAL_QUERIES[kind]:
        raise ParseError(number + 1, f"{kind} needs {INTERVAL_QUERIES[kind]} numbers")
    vals = _floats(number, tokens[1:])
    if len(vals) == 2 and vals[0] > vals[1]:
        raise ParseError(number + 1, "query interval has x1 > x2")
    return kind, vals


def read_simplexes(lines: Iterable[str]) -> tuple[np.ndarray, np.ndarray]:
    verts, ids, dim = [], [], None
    for number, tokens in records(lines):
        try:
            d = int(tokens[0])
        except ValueError:
            raise ParseError(number + 1, f"bad dimension {tokens[0]!r}") from None
        if d < 1:
            raise ParseError(number + 1, "dimension must be positive")
        if dim is None:
            dim = d
        elif d != dim:
            raise ParseError(number + 1, f"dimension {d} differs from earlier {dim}")
        if len(tokens) - 1 != (d + 1) * d:
            raise ParseError(number + 1, f"expected {(d + 1) * d} coordinates")
        verts.append(np.reshape(_floats(number, tokens[1:]), (d + 1, d)))
        ids.append(number)
    if dim is None:
        return np.empty((0, 2, 1)), np.empty(0, dtype=np.int64)
    return np.array(verts), np.array(ids, dtype=np.int64)


def parse_point_d(tokens: list[str], number: int, d: int) -> np.ndarray:
    if tokens[0].lower() == "point":
        tokens = tokens[1:]
    if len(tokens) != d:
        raise ParseError(number + 1, f"expected {d} coordinates, got {len(tokens)}")
    return np.array(_floats(number, tokens))


def format_record(qidx: int, ids: Iterable[int]) -> str:
    ids = sorted(set(int(i) for i in ids))
    return " ".join(str(v) for v in (qidx, len(ids), *ids))


def format_json(results: list[tuple[int, list[int]]]) -> str:
    return json.dumps([{"query": q, "ids": sorted(ids)} for q, ids in results])
