"""Static d-dimensional dominance reporting.

A stored point ``s`` is reported for a query ``q`` when ``s[j] <= q[j]`` for
every coordinate ``j``.  The index is a layered range tree restricted to
one-sided (orthant) queries and laid out as flat numpy arrays:

* stage 0 holds every point sorted by coordinate 0;
* a stage ``j`` layout identified by a path ``(L1, ..., Lj)`` re-sorts each
  aligned block of ``2**Lj`` positions of its parent layout by coordinate
  ``j``.

A query counts the prefix of a layout that passes coordinate ``j`` with one
binary search, splits that prefix along the set bits of its length into
aligned blocks, and descends into the matching child layouts.  The last
stage reports a contiguous prefix directly.  Blocks below ``2**LEAF_BITS``
points are scanned instead of getting layouts of their own.

Space is O(n log^(d-1) n), queries take O(log^(d-1) n + k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

LEAF_BITS = 5


class DimensionError(ValueError):
    """Raised when a point or query does not have the index dimension."""


@dataclass(frozen=True)
class PointD:
    coords: tuple[float, ...]
    id: int

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))


class DominanceIndex:
    """Immutable dominance-reporting structure over ``n`` points in ``d`` dims.

    Build with :meth:`from_arrays` (fast path) or :func:`build`.  Queries never
    mutate the structure beyond a call counter, so an index may be shared by
    concurrent readers.
    """

    def __init__(self, coords: np.ndarray, ids: np.ndarray, dimension: int | None = None):
        coords = np.asarray(coords, dtype=np.float64)
        ids = np.asarray(ids, dtype=np.int64)
        if coords.ndim != 2:
            if coords.size == 0 and dimension is not None:
                coords = coords.reshape(0, dimension)
            else:
                raise DimensionError("coordinates must be an (n, d) array")
        n, d = coords.shape
        if dimension is not None and d != dimension:
            raise DimensionError(f"points have dimension {d}, expected {dimension}")
        if d < 1:
            raise DimensionError("dimension must be at least 1")
        if ids.shape != (n,):
            raise ValueError("need exactly one id per point")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coordinates must be finite")
        if n and np.unique(ids).size != n:
            raise ValueError("duplicate point id")

        self.dimension = d
        self.size = n
        self.query_count = 0
        self._coords = np.ascontiguousarray(coords)
        self._ids = ids.copy()
        idx_type = np.int32 if n < 2**31 else np.int64

        # Global ranks per coordinate with id tie-breaking: sorting a layout
        # block-wise then needs one integer key instead of a lexsort.
        self._ranks = []
        for j in range(d):
            order = np.lexsort((ids, coords[:, j]))
            rank = np.empty(n, dtype=np.int64)
            rank[order] = np.arange(n)
            self._ranks.append(rank)

        perm0 = np.argsort(self._ranks[0], kind="stable").astype(idx_type)
        self._layouts: dict[tuple[int, ...], tuple[np.ndarray, np.ndarray]] = {}
        self._layouts[()] = (perm0, self._coords[perm0, 0])
        self._top_bits = n.bit_length() - 1 if n else 0
        if d > 1:
            self._build_children((), perm0, 1, self._top_bits)
        del self._ranks

        for perm, vals in self._layouts.values():
            perm.flags.writeable = False
            vals.flags.writeable = False
        self._coords.flags.writeable = False
        self._ids.flags.writeable = False

    def _build_children(self, path, parent_perm, j, max_bits):
        n = self.size
        positions = np.arange(n, dtype=np.int64)
        rank = self._ranks[j][parent_perm]
        for level in range(LEAF_BITS + 1, max_bits + 1):
            key = (positions >> level) * n + rank
            perm = parent_perm[np.argsort(key)]
            child = path + (level,)
            self._layouts[child] = (perm, self._coords[perm, j])
            if j + 1 < self.dimension:
                self._build_children(child, perm, j + 1, level)

    @classmethod
    def from_arrays(cls, coords, ids=None, dimension: int | None = None) -> "DominanceIndex":
        coords = np.asarray(coords, dtype=np.float64)
        if ids is None:
            ids = np.arange(len(coords))
        return cls(coords, ids, dimension)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"DominanceIndex(dimension={self.dimension}, size={self.size})"

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def ids(self) -> np.ndarray:
        return self._ids

    @property
    def layout_count(self) -> int:
        return len(self._layouts)

    def _check_query(self, q) -> np.ndarray:
        q = np.asarray(q, dtype=np.float64).reshape(-1)
        if q.shape[0] != self.dimension:
            raise DimensionError(f"query has dimension {q.shape[0]}, index has {self.dimension}")
        if not np.all(np.isfinite(q)):
            raise ValueError("query coordinates must be finite")
        return q

    def query_indices(self, q) -> np.ndarray:
        """Return row indices (into :attr:`coords`) of all points dominated by ``q``."""
        q = self._check_query(q)
        self.query_count += 1
        if self.size == 0:
            return np.empty(0, dtype=np.int64)
        out: list[np.ndarray] = []
        perm, vals = self._layouts[()]
        m = int(np.searchsorted(vals, q[0], side="right"))
        if self.dimension == 1:
            out.append(perm[:m])
        else:
            self._split(out, (), perm, 0, m, 1, q)
        if not out:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(out).astype(np.int64, copy=False)

    def _split(self, out, path, perm, start, m, j, q):
        """Report points of ``perm[start:start + m]`` passing coordinates ``j..``.

        ``start`` is aligned to every block level that ``m`` can contain.
        """
        offset = 0
        for level in range(m.bit_length() - 1, LEAF_BITS, -1):
            if not m >> level & 1:
                continue
            s = start + offset
            offset += 1 << level
            child = path + (level,)
            cperm, cvals = self._layouts[child]
            e = s + (1 << level)
            k = int(np.searchsorted(cvals[s:e], q[j], side="right"))
            if not k:
                continue
            if j + 1 == self.dimension:
                out.append(cperm[s:s + k])
            else:
                self._split(out, child, cperm, s, k, j + 1, q)
        if offset < m:
            rows = perm[start + offset:start + m]
            mask = np.all(self._coords[rows, j:] <= q[j:], axis=1)
            if mask.any():
                out.append(rows[mask])

    def query_ids(self, q) -> np.ndarray:
        return self._ids[self.query_indices(q)]

    def query(self, q) -> set[int]:
        return set(self.query_ids(q).tolist())


def _as_arrays(points: Sequence[PointD], d: int):
    coords = np.empty((len(points), d), dtype=np.float64)
    ids = np.empty(len(points), dtype=np.int64)
    for i, p in enumerate(points):
        if len(p.coords) != d:
            raise DimensionError(f"point id {p.id} has dimension {len(p.coords)}, expected {d}")
        coords[i] = p.coords
        ids[i] = p.id
    return coords, ids


def build(points: Sequence[PointD], d: int) -> DominanceIndex:
    """Build a dominance index over ``points``, each with ``d`` coordinates."""
    if d < 1:
        raise DimensionError("dimension must be at least 1")
    coords, ids = _as_arrays(points, d)
    return DominanceIndex(coords, ids, d)


def query_dominated(index: DominanceIndex, q) -> set[int]:
    if isinstance(q, PointD):
        q = q.coords
    return index.query(q)


def brute_force_dominated(points: Iterable[PointD], q) -> set[int]:
    """Linear scan applying the dominance definition; the reference semantics."""
    if isinstance(q, PointD):
        q = q.coords
    q = tuple(float(c) for c in q)
    found = set()
    for p in points:
        if len(p.coords) != len(q):
            raise DimensionError(f"point id {p.id} has dimension {len(p.coords)}, query has {len(q)}")
        if all(a <= b for a, b in zip(p.coords, q)):
            found.add(p.id)
    return found


def expected_layouts(n: int, d: int) -> int:
    """Number of sorted layouts an index over ``n`` points in ``d`` dims holds."""
    top = n.bit_length() - 1 if n else 0

    def count(j, max_bits):
        if j >= d:
            return 0
        return sum(1 + count(j + 1, level) for level in range(LEAF_BITS + 1, max_bits + 1))

    return 1 + count(1, top)

