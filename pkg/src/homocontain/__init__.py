"""Report homothetic triangles (and simplexes) containing query objects
through dominance reporting."""

from .containment import (
    DEFAULT_EPS,
    CanonicalTriangle,
    ContainmentIndex,
    Degenerate,
    FamilyError,
    FamilyFrame,
    NotHomothetic,
    TriangleRaw,
    build_index,
    canonicalize_family,
    oracle_contains,
)
from .dominance import DominanceIndex, PointD, brute_force_dominated, query_dominated
from .geometry import (
    Affine2,
    ConvexPolygon,
    Ellipse,
    Point2,
    Rect,
    Segment,
    Trapezoid,
    apply_affine,
    query_triple,
    support_max,
)
from .intervals import Interval, IntervalIndex, build_intervals
from .simplex import SimplexD, build_simplex_index, query_point_d

__version__ = "0.1.0"

__all__ = [
    "Affine2",
    "apply_affine",
    "brute_force_dominated",
    "build_index",
    "build_intervals",
    "build_simplex_index",
    "canonicalize_family",
    "CanonicalTriangle",
    "ContainmentIndex",
    "ConvexPolygon",
    "DEFAULT_EPS",
    "Degenerate",
    "DominanceIndex",
    "Ellipse",
    "FamilyError",
    "FamilyFrame",
    "Interval",
    "IntervalIndex",
    "NotHomothetic",
    "oracle_contains",
    "Point2",
    "PointD",
    "query_dominated",
    "query_point_d",
    "query_triple",
    "Rect",
    "Segment",
    "SimplexD",
    "support_max",
    "Trapezoid",
    "TriangleRaw",
]
