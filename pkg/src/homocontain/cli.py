"""Command-line front end (``hct``).

Exit codes: 0 success, 1 parse or I/O error, 2 non-homothetic or degenerate
family, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from contextlib import contextmanager

import numpy as np

from . import bench as benchmod
from .containment import DEFAULT_EPS, ContainmentIndex, FamilyError, NotHomothetic, oracle_filter
from .formats import (
    ParseError,
    format_json,
    format_query,
    format_record,
    parse_interval_query,
    parse_point_d,
    parse_query,
    read_intervals,
    read_simplexes,
    read_triangles,
    records,
)
from .generate import QUERY_KINDS, near_boundary, random_family, random_query
from .intervals import IntervalIndex
from .simplex import build_simplex_index, query_point_d
from .storage import IndexFileError, load_index, save_index

EXIT_OK, EXIT_INPUT, EXIT_FAMILY, EXIT_MISMATCH = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def resolve_eps(flag: float | None) -> float:
    if flag is not None:
        return flag
    env = os.environ.get("HCT_EPS")
    if env:
        try:
            return float(env)
        except ValueError:
            raise CliError(EXIT_INPUT, f"HCT_EPS is not a number: {env!r}") from None
    return DEFAULT_EPS


@contextmanager
def _open_text(path):
    if path == "-":
        yield sys.stdin
        return
    try:
        f = open(path, encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from None
    with f:
        yield f


def _read_lines(path) -> list[str]:
    with _open_text(path) as f:
        return f.readlines()


def _family_error(exc: FamilyError, ids) -> CliError:
    line = int(ids[exc.index]) + 1
    what = "not homothetic to the first record" if isinstance(exc, NotHomothetic) else "degenerate"
    return CliError(EXIT_FAMILY, f"line {line} (id {line - 1}): {what}")


def _build_from_file(path, eps) -> tuple[ContainmentIndex, np.ndarray]:
    try:
        verts, ids = read_triangles(_read_lines(path))
    except ParseError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from None
    if len(verts) == 0:
        raise CliError(EXIT_INPUT, f"{path}: no triangles")
    try:
        return ContainmentIndex.from_arrays(verts, ids, eps), verts
    except FamilyError as exc:
        raise _family_error(exc, ids) from None


def _load(path) -> ContainmentIndex:
    try:
        return load_index(path)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from None
    except IndexFileError as exc:
        raise CliError(EXIT_INPUT, f"{path}: {exc}") from None


def cmd_build(args) -> int:
    eps = resolve_eps(args.eps)
    t0 = time.perf_counter()
    index, _ = _build_from_file(args.triangles, eps)
    elapsed = (time.perf_counter() - t0) * 1e3
    try:
        save_index(index, args.output)
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot write {args.output}: {exc.strerror}") from None
    print(f"n={len(index)} build_ms={elapsed:.3f}", file=sys.stderr)
    return EXIT_OK


def _emit(results, fmt, out):
    if fmt == "json":
        out.write(format_json(results) + "\n")


def cmd_query(args) -> int:
    index = _load(args.index)
    results = []
    out = sys.stdout
    with _open_text(args.queries) as f:
        for qidx, (number, tokens) in enumerate(records(f)):
            try:
                obj = parse_query(tokens, number)
            except ParseError as exc:
                _emit(results, args.format, out)
                raise CliError(EXIT_INPUT, f"{args.queries}: {exc}") from None
            ids = sorted(index.query_ids(obj).tolist())
            if args.format == "json":
                results.append((qidx, ids))
            else:
                out.write(format_record(qidx, ids) + "\n")
    _emit(results, args.format, out)
    return EXIT_OK


def _random_workload(n, q, seed, eps):
    rng = np.random.default_rng(seed)
    verts = random_family(rng, n)
    index = ContainmentIndex.from_arrays(verts, None, eps)
    queries = []
    while len(queries) < q:
        obj = random_query(rng, QUERY_KINDS[len(queries) % len(QUERY_KINDS)], verts)
        if not near_boundary(index, verts, obj):
            queries.append(obj)
    return index, verts, np.arange(n), queries


def cmd_verify(args) -> int:
    eps = resolve_eps(args.eps)
    if args.random:
        n, q = args.random
        if n < 1 or q < 0:
            raise CliError(EXIT_INPUT, "--random needs N >= 1 and Q >= 0")
        index, verts, ids, queries = _random_workload(n, q, args.seed, eps)
    else:
        if not (args.triangles and args.queries):
            raise CliError(EXIT_INPUT, "verify needs TRIANGLES and QUERIES, or --random N Q")
        index, verts = _build_from_file(args.triangles, eps)
        ids = index.ids
        if args.index:
            index = _load(args.index)
        queries = []
        with _open_text(args.queries) as f:
            for number, tokens in records(f):
                try:
                    queries.append(parse_query(tokens, number))
                except ParseError as exc:
                    raise CliError(EXIT_INPUT, f"{args.queries}: {exc}") from None

    failures = 0
    first = None
    for qidx, obj in enumerate(queries):
        got = set(index.query_ids(obj).tolist())
        want = oracle_filter(verts, obj, index.eps, ids)
        kind = format_query(obj).split()[0]
        if got == want:
            print(f"PASS {qidx} {kind} k={len(want)}")
            continue
        failures += 1
        print(f"FAIL {qidx} {kind} index={len(got)} oracle={len(want)}")
        if first is None:
            tid = min(got ^ want)
            first = (tid, qidx, obj, tid in got, tid in want)
    print(f"summary: {len(queries)} queries, {len(queries) - failures} passed, {failures} failed")
    if first is not None:
        tid, qidx, obj, in_index, in_oracle = first
        print(
            f"counterexample: triangle {tid} query {qidx} ({format_query(obj)}): "
            f"index={'contains' if in_index else 'excludes'} "
            f"oracle={'contains' if in_oracle else 'excludes'}"
        )
        return EXIT_MISMATCH
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    sizes = []
    for item in text.split(","):
        item = item.strip()
        try:
            if "^" in item:
                base, exp = item.split("^")
                sizes.append(int(base) ** int(exp))
            else:
                sizes.append(int(item))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad size {item!r}") from None
    return sizes


def cmd_bench(args) -> int:
    if args.sizes != sorted(args.sizes):
        raise CliError(EXIT_INPUT, "--sizes must be ascending")
    rows = benchmod.run_bench(args.sizes, args.repeats, args.seed, args.queries)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as f:
            benchmod.write_csv(rows, f)
    else:
        benchmod.write_csv(rows, sys.stdout)
    if args.plot:
        from .plotting import plot_bench

        plot_bench(rows, args.plot)
    return EXIT_OK


def cmd_intervals(args) -> int:
    try:
        lo, hi, ids = read_intervals(_read_lines(args.intervals))
    except ParseError as exc:
        raise CliError(EXIT_INPUT, f"{args.intervals}: {exc}") from None
    index = IntervalIndex(lo, hi, ids)
    with _open_text(args.queries) as f:
        for qidx, (number, tokens) in enumerate(records(f)):
            try:
                kind, vals = parse_interval_query(tokens, number)
            except ParseError as exc:
                raise CliError(EXIT_INPUT, f"{args.queries}: {exc}") from None
            if kind == "stab":
                found = index.stab(vals[0])
            elif kind == "containing":
                found = index.containing(*vals)
            elif kind == "contained":
                found = index.contained_in(*vals)
            else:
                found = index.overlapping(*vals)
            sys.stdout.write(format_record(qidx, found) + "\n")
    return EXIT_OK


def cmd_simplex(args) -> int:
    eps = resolve_eps(args.eps)
    try:
        verts, ids = read_simplexes(_read_lines(args.simplexes))
    except ParseError as exc:
        raise CliError(EXIT_INPUT, f"{args.simplexes}: {exc}") from None
    if len(ids) == 0:
        raise CliError(EXIT_INPUT, f"{args.simplexes}: no simplexes")
    try:
        frame, index = build_simplex_index(verts, eps, ids, max_dim=args.max_dim)
    except FamilyError as exc:
        raise _family_error(exc, ids) from None
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    d = verts.shape[2]
    results = []
    with _open_text(args.points) as f:
        for qidx, (number, tokens) in enumerate(records(f)):
            try:
                p = parse_point_d(tokens, number, d)
            except ParseError as exc:
                _emit(results, args.format, sys.stdout)
                raise CliError(EXIT_INPUT, f"{args.points}: {exc}") from None
            found = sorted(query_point_d(frame, index, p))
            if args.format == "json":
                results.append((qidx, found))
            else:
                sys.stdout.write(format_record(qidx, found) + "\n")
    _emit(results, args.format, sys.stdout)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hct", description="Report homothetic triangles containing query objects."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a binary index from a triangle file")
    p.add_argument("triangles")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--eps", type=float)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer a query file against an index")
    p.add_argument("index")
    p.add_argument("queries")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="check index answers against the half-plane oracle")
    p.add_argument("triangles", nargs="?")
    p.add_argument("queries", nargs="?")
    p.add_argument("--index", help="verify this saved index instead of a fresh build")
    p.add_argument("--random", nargs=2, type=int, metavar=("N", "Q"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time build and queries over growing n (CSV)")
    p.add_argument("--sizes", type=_parse_sizes, default=list(benchmod.DEFAULT_SIZES))
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--queries", type=int, default=200)
    p.add_argument("-o", "--output", help="CSV path (default stdout)")
    p.add_argument("--plot", help="also render a PNG/PDF/SVG figure to this path")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("intervals", help="stabbing/containment/overlap queries on intervals")
    p.add_argument("intervals")
    p.add_argument("queries")
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("simplex", help="point queries on homothetic simplexes in d dimensions")
    p.add_argument("simplexes")
    p.add_argument("points")
    p.add_argument("--eps", type=float)
    p.add_argument("--max-dim", type=int, default=8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_simplex)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stdout.flush()
        print(f"hct: error: {exc}", file=sys.stderr)
        return exc.code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
