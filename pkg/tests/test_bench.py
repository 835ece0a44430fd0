import io
import math

import pytest

from homocontain.bench import FIELDS, BenchRow, read_csv, run_bench, scaling_summary, write_csv
from homocontain.plotting import plot_bench


@pytest.fixture(scope="module")
def rows():
    return run_bench([256, 512, 1024], repeats=1, seed=3, queries=30)


def test_rows_shape(rows):
    assert [r.n for r in rows] == [256, 512, 1024]
    for r in rows:
        assert r.build_ms > 0 and r.query_ns_mean_k0 > 0 and r.query_ns_mean_reporting > 0
        assert r.k_mean >= 1


def test_csv_round_trip(rows):
    buf = io.StringIO()
    write_csv(rows, buf)
    assert buf.getvalue().splitlines()[0] == ",".join(FIELDS)
    buf.seek(0)
    back = read_csv(buf)
    assert [r.n for r in back] == [r.n for r in rows]
    assert all(math.isclose(a.build_ms, b.build_ms, rel_tol=1e-5) for a, b in zip(back, rows))


def test_scaling_summary():
    shape = ((10, 1.0, 100), (11, 1.5, 120), (12, 1.5, 150))
    rows = [BenchRow(2**e, 2**e * e * c, q, 0.0, 0.0) for e, c, q in shape]
    s = scaling_summary(rows)
    assert s["max_build_step_ratio"] == pytest.approx(1.5)
    assert s["k0_query_ratio"] == pytest.approx(1.5)


@pytest.mark.parametrize("suffix", ["png", "svg"])
def test_plot_writes_file(rows, tmp_path, suffix):
    out = tmp_path / f"bench.{suffix}"
    plot_bench(rows, out, title="small")
    assert out.stat().st_size > 1000
