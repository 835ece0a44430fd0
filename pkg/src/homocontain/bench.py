"""Scaling benchmark for containment-index build and query times."""

from __future__ import annotations

import csv
import math
import time
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .containment import ContainmentIndex
from .generate import random_family
from .geometry import Point2, Segment

FIELDS = ("n", "build_ms", "query_ns_mean_k0", "query_ns_mean_reporting", "k_mean")
DEFAULT_SIZES = tuple(2**e for e in range(12, 18))


@dataclass
class BenchRow:
    n: int
    build_ms: float
    query_ns_mean_k0: float
    query_ns_mean_reporting: float
    k_mean: float


def _miss_queries(rng, index: ContainmentIndex, count: int) -> list[Segment]:
    """Segments that clear the first two coordinates for many triangles but
    reach past every hypotenuse, so the answer is empty after a full descent."""
    pts = index.points
    a, b = pts[:, 0], pts[:, 1]
    top = float(np.max(-pts[:, 2]))
    back = index.frame.map.inverse()
    out = []
    for _ in range(count):
        h = rng.uniform(a.min(), a.max())
        k = rng.uniform(b.min(), b.max())
        end = Point2(h + top - (h + k) + 1.0, k)
        out.append(Segment(back.point(Point2(h, k)), back.point(end)))
    return out


def _hit_queries(rng, verts: np.ndarray, count: int) -> list[Point2]:
    picks = rng.integers(len(verts), size=count)
    weights = rng.dirichlet(np.ones(3), size=count)
    pts = np.einsum("qi,qij->qj", weights, verts[picks])
    return [Point2(x, y) for x, y in pts]


def _time_queries(index: ContainmentIndex, queries) -> tuple[float, float]:
    total = 0
    found = 0
    for obj in queries:
        t0 = time.perf_counter_ns()
        ids = index.query_ids(obj)
        total += time.perf_counter_ns() - t0
        found += len(ids)
    return total / len(queries), found / len(queries)


def bench_size(n: int, repeats: int = 3, seed: int = 0, queries: int = 200) -> BenchRow:
    rng = np.random.default_rng([seed, n])
    # spread grows with sqrt(n) so the expected output size stays flat
    verts = random_family(rng, n, spread=2.0 * math.sqrt(n))
    build = math.inf
    index = None
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter_ns()
        index = ContainmentIndex.from_arrays(verts)
        build = min(build, time.perf_counter_ns() - t0)
    miss = _miss_queries(rng, index, queries)
    hit = _hit_queries(rng, verts, queries)
    index.query_ids(miss[0])  # warm-up
    k0_ns, k0_found = _time_queries(index, miss)
    if k0_found:
        raise AssertionError("miss queries reported triangles")
    hit_ns, k_mean = _time_queries(index, hit)
    return BenchRow(n, build / 1e6, k0_ns, hit_ns, k_mean)


def run_bench(sizes=DEFAULT_SIZES, repeats: int = 3, seed: int = 0, queries: int = 200) -> list[BenchRow]:
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("benchmark sizes must be ascending")
    resolution = time.get_clock_info("perf_counter").resolution
    if resolution > 1e-6:
        warnings.warn(f"timer resolution {resolution:g}s is too coarse for per-query timing")
    return [bench_size(n, repeats, seed, queries) for n in sizes]


def write_csv(rows: list[BenchRow], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        d = asdict(row)
        writer.writerow({k: (f"{v:.6g}" if isinstance(v, float) else v) for k, v in d.items()})


def read_csv(stream) -> list[BenchRow]:
    return [
        BenchRow(int(r["n"]), *(float(r[k]) for k in FIELDS[1:]))
        for r in csv.DictReader(stream)
    ]


def scaling_summary(rows: list[BenchRow]) -> dict:
    """Normalized build cost per size, its worst consecutive ratio, and the
    k=0 query-time growth over the full size range."""
    per = [r.build_ms / (r.n * math.log2(r.n)) for r in rows]
    steps = [max(a, b) / min(a, b) for a, b in zip(per, per[1:])]
    return {
        "build_per_nlogn": per,
        "max_build_step_ratio": max(steps) if steps else 1.0,
        "k0_query_ratio": rows[-1].query_ns_mean_k0 / rows[0].query_ns_mean_k0,
    }
