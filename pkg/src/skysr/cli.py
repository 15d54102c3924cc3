"""Command-line entry points.

Subcommands: gen (synthetic dataset + workload), bench (metric table over a
workload), query (one engine query as a JSON record), oracle (same record
from the exhaustive reference), serve (HTTP service).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict

from .baselines import brute_force_skyline
from .engine import Counters, SearchFlags, run_bssr
from .harness import (
    _FLAG_SETS,
    BenchConfig,
    generate_synthetic_map,
    load_dataset,
    run_benchmark,
)
from .records import build_query_record

FLAG_NAMES = ("init_search", "pq_ordering", "lower_bounds", "caching", "path_filter")


def _parse_flags(disable: str | None) -> SearchFlags:
    if not disable:
        return SearchFlags()
    off = {}
    for name in disable.split(","):
        name = name.strip()
        if name not in FLAG_NAMES:
            raise SystemExit(
                f"unknown flag {name!r}; choose from {', '.join(FLAG_NAMES)}")
        off[name] = False
    return SearchFlags(**off)


def _emit(record: dict, out: str | None) -> None:
    text = json.dumps(record, indent=2, sort_keys=True) + "\n"
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_gen(args) -> None:
    cfg = BenchConfig.from_file(args.spec)
    out = generate_synthetic_map(cfg, seed=args.seed, out_dir=args.out)
    g, f = load_dataset(out)
    print(f"{out}: {g.vertex_count} vertices, {g.edge_count} edges, "
          f"{len(g.pois)} PoIs, {len(f.categories)} categories")


def _cmd_bench(args) -> None:
    with open(args.workload, encoding="utf-8") as fh:
        workload = json.load(fh)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    known = set(_FLAG_SETS) | {"iter_osr", "oracle"}
    for a in algos:
        if a not in known:
            raise SystemExit(f"unknown algo {a!r}; choose from {', '.join(sorted(known))}")
    rows = run_benchmark(
        args.data, workload, algos, out_path=args.out, fmt=args.format,
        workers=args.workers, trace_mem=args.mem,
    )
    print(f"{args.out}: {len(rows)} rows")


def _resolve_start(args, g):
    if (args.start is None) == (args.at is None):
        raise SystemExit("give exactly one of --start or --at X,Y")
    if args.start is not None:
        if args.start not in g.index:
            raise SystemExit(f"unknown vertex id {args.start!r}")
        return args.start
    from .graph import snap_point

    try:
        x, y = (float(t) for t in args.at.split(","))
    except ValueError:
        raise SystemExit(f"--at wants X,Y, got {args.at!r}") from None
    return snap_point(g, x, y)


def _cmd_query(args) -> None:
    g, f = load_dataset(args.data)
    start = _resolve_start(args, g)
    seq = [c.strip() for c in args.categories.split(",") if c.strip()]
    flags = _parse_flags(args.disable)
    s, counters = run_bssr(g, f, start, seq, flags=flags)
    record = build_query_record(
        g, start, seq,
        [(r.pois, r.sims, r.length, r.min_semantic) for r in s],
        counters.as_dict(), asdict(flags),
    )
    _emit(record, args.out)


def _cmd_oracle(args) -> None:
    g, f = load_dataset(args.data)
    start = _resolve_start(args, g)
    seq = [c.strip() for c in args.categories.split(",") if c.strip()]
    t0 = time.perf_counter()
    routes = brute_force_skyline(g, f, start, seq)
    counters = Counters()
    counters.elapsed = time.perf_counter() - t0
    record = build_query_record(
        g, start, seq,
        [(r.stops, r.sims, r.length, r.score) for r in routes],
        counters.as_dict(), None,
    )
    _emit(record, args.out)


def _cmd_serve(args) -> None:
    import uvicorn

    from .service import create_app

    app = create_app(args.data, max_concurrent=args.max_concurrent,
                     static_dir=args.static, query_timeout=args.timeout)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")


def main(argv=None) -> None:
    p = argparse.ArgumentParser(
        prog="skysr",
        description="Skyline sequenced-route queries over categorized road networks.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("gen", help="generate a synthetic dataset and workload")
    sp.add_argument("--spec", required=True, help="benchmark spec JSON")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", required=True, help="output dataset directory")
    sp.set_defaults(fn=_cmd_gen)

    sp = sub.add_parser("bench", help="run algorithms over a workload")
    sp.add_argument("--data", required=True, help="dataset directory")
    sp.add_argument("--workload", required=True, help="workload JSON file")
    sp.add_argument("--algos", default="bssr,bssr_noopt,iter_osr",
                    help="comma list; engine variants plus iter_osr, oracle")
    sp.add_argument("--out", required=True, help="result table path")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--workers", type=int, default=1,
                    help="parallel queries; timings only comparable at 1")
    sp.add_argument("--mem", action="store_true",
                    help="trace allocator peak per query (forces --workers 1)")
    sp.set_defaults(fn=_cmd_bench)

    for name, fn in (("query", _cmd_query), ("oracle", _cmd_oracle)):
        sp = sub.add_parser(name, help=f"run one {name} and print the record")
        sp.add_argument("--data", required=True)
        sp.add_argument("--start", help="start vertex id")
        sp.add_argument("--at", help="X,Y to snap to the nearest vertex")
        sp.add_argument("--categories", required=True, help="comma list, in order")
        sp.add_argument("--out", help="write JSON here instead of stdout")
        if name == "query":
            sp.add_argument("--disable",
                            help=f"comma list of optimizations to turn off: "
                                 f"{', '.join(FLAG_NAMES)}")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("serve", help="serve the HTTP API (and UI, if built)")
    sp.add_argument("--data", required=True)
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    sp.add_argument("--max-concurrent", type=int, default=None,
                    help="bound on simultaneous engine runs (default: CPU count)")
    sp.add_argument("--timeout", type=float, default=30.0,
                    help="per-query seconds before a 504")
    sp.add_argument("--static", help="directory with the built UI bundle")
    sp.set_defaults(fn=_cmd_serve)

    args = p.parse_args(argv)
    args.fn(args)


if __name__ == "__main__":
    main()
