"""Point queries over homothetic simplexes in d dimensions.

An affine frame sends the first simplex to the corner simplex
``{x : x >= 0, sum(x) <= 1}``.  Every positive homothet then lands on a
corner simplex ``{x : x >= c, sum(x) <= sum(c) + alpha}``, so a point ``p``
lies in it iff ``(p, -sum(p))`` dominates ``(c, -sum(c) - alpha)`` in
``d + 1`` dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .containment import DEFAULT_EPS, Degenerate, NotHomothetic, relative_tol
from .dominance import DimensionError, DominanceIndex

MAX_DIMENSION = 8


@dataclass(frozen=True)
class SimplexD:
    vertices: tuple[tuple[float, ...], ...]
    id: int

    def array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=np.float64)


@dataclass(frozen=True)
class CanonicalSimplexD:
    corner: tuple[float, ...]
    alpha: float


@dataclass(frozen=True)
class FrameD:
    linear: np.ndarray
    translate: np.ndarray
    eps: float = DEFAULT_EPS

    @property
    def dimension(self) -> int:
        return self.linear.shape[0]

    def apply(self, pts) -> np.ndarray:
        return np.asarray(pts, dtype=np.float64) @ self.linear.T + self.translate


def _edge_matrices(verts: np.ndarray) -> np.ndarray:
    # columns are v_i - v_0
    return np.swapaxes(verts[:, 1:, :] - verts[:, :1, :], 1, 2)


def _reference_frame(ref: np.ndarray, eps: float) -> FrameD:
    ref = ref.copy()
    if np.linalg.det(_edge_matrices(ref[None])[0]) < 0:
        ref[[0, 1]] = ref[[1, 0]]
    linear = np.linalg.inv(_edge_matrices(ref[None])[0])
    return FrameD(linear, -linear @ ref[0], eps)


def canonicalize_simplexes(verts, eps: float = DEFAULT_EPS, max_dim: int = MAX_DIMENSION):
    """Return ``(frame, corners (n, d), alphas (n,))`` for an ``(n, d+1, d)`` array."""
    verts = np.asarray(verts, dtype=np.float64)
    if verts.ndim != 3 or verts.shape[1] != verts.shape[2] + 1 or len(verts) == 0:
        raise ValueError("need a nonempty (n, d+1, d) array of simplex vertices")
    d = verts.shape[2]
    if not 1 <= d <= max_dim:
        raise DimensionError(f"dimension {d} outside 1..{max_dim}")
    if not np.all(np.isfinite(verts)):
        raise ValueError("simplex coordinates must be finite")

    edges = _edge_matrices(verts)
    longest = np.max(np.linalg.norm(edges, axis=1), axis=1)
    degenerate = ~(np.abs(np.linalg.det(edges)) > eps * longest**d)
    if degenerate[0]:
        raise Degenerate(0, "simplex 0 is degenerate")
    frame = _reference_frame(verts[0], eps)

    w = frame.apply(verts)
    corner = w.min(axis=1)
    alpha = w.sum(axis=2).max(axis=1) - corner.sum(axis=1)
    targets = np.repeat(corner[:, None, :], d + 1, axis=1)
    targets[:, 1:, :] += alpha[:, None, None] * np.eye(d)
    tol = eps * np.maximum(alpha, np.max(np.abs(w), axis=(1, 2)))
    gaps = np.max(np.abs(w[:, :, None, :] - targets[:, None, :, :]), axis=3)
    matched = np.all(gaps.min(axis=1) <= tol[:, None], axis=1)
    extents_ok = np.all(np.abs(w.max(axis=1) - corner - alpha[:, None]) <= tol[:, None], axis=1)
    bad = degenerate | ~(matched & extents_ok & (alpha > 0))
    if bad.any():
        i = int(np.argmax(bad))
        if degenerate[i]:
            raise Degenerate(i, f"simplex {i} is degenerate")
        raise NotHomothetic(i, f"simplex {i} is not a positive homothet of simplex 0")
    return frame, corner, alpha


def build_simplex_index(
    simplexes: Sequence[SimplexD] | np.ndarray,
    eps: float = DEFAULT_EPS,
    ids=None,
    max_dim: int = MAX_DIMENSION,
) -> tuple[FrameD, DominanceIndex]:
    """Canonicalize the family and index it for (d+1)-dimensional dominance."""
    if isinstance(simplexes, np.ndarray):
        verts = simplexes
        if ids is None:
            ids = np.arange(len(verts))
    else:
        if not simplexes:
            raise ValueError("simplex family is empty")
        verts = np.stack([s.array() for s in simplexes])
        ids = [s.id for s in simplexes]
    frame, corner, alpha = canonicalize_simplexes(verts, eps, max_dim)
    points = np.concatenate([corner, (-corner.sum(axis=1) - alpha)[:, None]], axis=1)
    return frame, DominanceIndex(points, ids, corner.shape[1] + 1)


def canonical_simplexes(index: DominanceIndex) -> list[CanonicalSimplexD]:
    out = []
    for row in index.coords:
        corner = row[:-1]
        out.append(CanonicalSimplexD(tuple(corner.tolist()), float(-row[-1] - corner.sum())))
    return out


def query_point_d(frame: FrameD, index: DominanceIndex, p, eps: float | None = None) -> set[int]:
    """Ids of every simplex whose closed region contains ``p``."""
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    if p.shape[0] != frame.dimension:
        raise DimensionError(f"point has dimension {p.shape[0]}, family has {frame.dimension}")
    if eps is None:
        eps = frame.eps
    q = frame.apply(p)
    total = float(q.sum())
    tol = relative_tol(eps, total, *q.tolist())
    return index.query(np.append(q, -total) + tol)


def simplex_oracle_contains(vertices, p, eps: float = DEFAULT_EPS) -> bool:
    """Test ``p`` against the d+1 facet half-spaces of one simplex."""
    v = np.asarray(vertices, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    d = v.shape[1]
    system = np.vstack([v.T, np.ones(d + 1)])
    bary = np.linalg.inv(system)
    # row i is the affine function vanishing on the facet opposite vertex i;
    # dividing by its gradient norm turns it into a signed distance
    values = bary @ np.append(p, 1.0)
    distances = values / np.linalg.norm(bary[:, :d], axis=1)
    return bool(np.all(distances >= -relative_tol(eps, *p.tolist())))
