"""Interval stabbing, containment and overlap through 2-d dominance.

``[lo, hi]`` is stored as ``(lo, -hi)`` in a forward index and as
``(-lo, hi)`` in a reverse index.  ``[lo, hi]`` contains ``[x1, x2]`` iff
``(x1, -x2)`` dominates the forward point, and lies inside ``[x1, x2]`` iff
``(-x1, x2)`` dominates the reverse point.  Stabbing is containment of the
degenerate interval ``[q, q]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dominance import DominanceIndex


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    id: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if self.lo > self.hi:
            raise ValueError(f"interval {self.id} has lo > hi")


def _check_query(x1: float, x2: float):
    if not (math.isfinite(x1) and math.isfinite(x2)):
        raise ValueError("query endpoints must be finite")
    if x1 > x2:
        raise ValueError("query interval has x1 > x2")


class IntervalIndex:
    def __init__(self, lo, hi, ids=None):
        lo = np.asarray(lo, dtype=np.float64).reshape(-1)
        hi = np.asarray(hi, dtype=np.float64).reshape(-1)
        if lo.shape != hi.shape:
            raise ValueError("lo and hi must have equal length")
        if np.any(lo > hi):
            bad = int(np.argmax(lo > hi))
            raise ValueError(f"interval {bad} has lo > hi")
        if ids is None:
            ids = np.arange(len(lo))
        self.forward = DominanceIndex(np.stack([lo, -hi], axis=1), ids, 2)
        self.reverse = DominanceIndex(np.stack([-lo, hi], axis=1), ids, 2)

    def __len__(self) -> int:
        return self.forward.size

    @property
    def queries_issued(self) -> int:
        """Dominance queries sent to both sub-indexes so far."""
        return self.forward.query_count + self.reverse.query_count

    def stab(self, q: float) -> set[int]:
        _check_query(q, q)
        return self.forward.query((q, -q))

    def containing(self, x1: float, x2: float) -> set[int]:
        _check_query(x1, x2)
        return self.forward.query((x1, -x2))

    def contained_in(self, x1: float, x2: float) -> set[int]:
        _check_query(x1, x2)
        return self.reverse.query((-x1, x2))

    def overlapping(self, x1: float, x2: float) -> set[int]:
        # an overlapping interval holds x1, holds x2, or sits inside [x1, x2]
        _check_query(x1, x2)
        return self.stab(x1) | self.stab(x2) | self.contained_in(x1, x2)


def build_intervals(intervals: Sequence[Interval]) -> IntervalIndex:
    lo = [iv.lo for iv in intervals]
    hi = [iv.hi for iv in intervals]
    return IntervalIndex(lo, hi, [iv.id for iv in intervals])


def stab(index: IntervalIndex, q: float) -> set[int]:
    return index.stab(q)


def containing(index: IntervalIndex, x1: float, x2: float) -> set[int]:
    return index.containing(x1, x2)


def contained_in(index: IntervalIndex, x1: float, x2: float) -> set[int]:
    return index.contained_in(x1, x2)


def overlapping(index: IntervalIndex, x1: float, x2: float) -> set[int]:
    return index.overlapping(x1, x2)
