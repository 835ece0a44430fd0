"""Figures for benchmark output."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import BenchRow  # noqa: E402


def plot_bench(rows: list[BenchRow], path, title: str | None = None) -> None:
    """Two panels: normalized build cost and mean query time against n."""
    n = [r.n for r in rows]
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.6), constrained_layout=True)

    per = [r.build_ms * 1e6 / (r.n * math.log2(r.n)) for r in rows]
    left.plot(n, per, "o-", color="tab:blue")
    left.set_xscale("log", base=2)
    left.set_ylim(0, max(per) * 1.3)
    left.set_xlabel("triangles n")
    left.set_ylabel("build ns / (n log2 n)")
    left.set_title("preprocessing")

    right.plot(n, [r.query_ns_mean_k0 / 1e3 for r in rows], "o-", label="empty answer")
    right.plot(n, [r.query_ns_mean_reporting / 1e3 for r in rows], "s--", label="reporting")
    right.set_xscale("log", base=2)
    right.set_ylim(bottom=0)
    right.set_xlabel("triangles n")
    right.set_ylabel("mean query time (us)")
    right.set_title("queries")
    right.legend(frameon=False)

    if title:
        fig.suptitle(title)
    fig.savefig(path, dpi=120)
    plt.close(fig)
