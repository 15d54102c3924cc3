"""Synthetic datasets, query workloads, and benchmark runs."""

from __future__ import annotations

import csv
import json
import math
import random
import time
import tracemalloc
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .baselines import brute_force_skyline, iter_osr_skyline
from .engine import SearchFlags, run_bssr
from .graph import RoadGraph, load_graph
from .taxonomy import CategoryForest


@dataclass
class BenchConfig:
    """Declarative description of a synthetic dataset plus its workload.

    ``graph``: {"kind": "grid", "width": W, "height": H} or
    {"kind": "geometric", "nodes": N, "radius": R}; both accept
    "weight_range": [lo, hi] (default [1, 10]).
    ``pois``: {"count": N} or {"ratio": fraction of vertices}.
    ``forest``: {"trees": T, "branching": B, "height": H}.
    ``workload``: {"queries": N, "sizes": [lo, hi], "seed": optional}.
    """

    graph: dict
    pois: dict
    forest: dict
    workload: dict

    @classmethod
    def from_file(cls, path: str) -> "BenchConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        for key in ("graph", "pois", "forest", "workload"):
            if key not in raw:
                raise ValueError(f"{path}: benchmark spec is missing {key!r}")
        return cls(raw["graph"], raw["pois"], raw["forest"], raw["workload"])


def _fmt(x: float) -> str:
    return f"{x:.6f}".rstrip("0").rstrip(".")


def _draw_weight(rng: random.Random, lo: float, hi: float) -> float:
    """Uniform weight snapped to a multiple of 1/64.

    Dyadic weights make every path length exact in binary floating point, so
    equal-length paths compare equal no matter how the sums are associated.
    """
    return max(1.0 / 64.0, round(rng.uniform(lo, hi) * 64.0) / 64.0)


def _grid_lines(gcfg: dict, rng: random.Random):
    w, h = int(gcfg["width"]), int(gcfg["height"])
    if w < 2 or h < 2:
        raise ValueError("grid needs width and height of at least 2")
    lo, hi = gcfg.get("weight_range", [1.0, 10.0])
    nodes = []
    edges = []
    for r in range(h):
        for c in range(w):
            nodes.append(f"{r * w + c} {c} {r}")
    for r in range(h):
        for c in range(w):
            u = r * w + c
            if c + 1 < w:
                edges.append(f"{u} {u + 1} {_fmt(_draw_weight(rng, lo, hi))}")
            if r + 1 < h:
                edges.append(f"{u} {u + w} {_fmt(_draw_weight(rng, lo, hi))}")
    return nodes, edges, w * h


def _geometric_lines(gcfg: dict, rng: random.Random):
    n = int(gcfg["nodes"])
    if n < 2:
        raise ValueError("geometric graph needs at least 2 nodes")
    radius = float(gcfg.get("radius", 1.5))
    lo, hi = gcfg.get("weight_range", [1.0, 10.0])
    side = math.sqrt(n)
    pts = [(rng.uniform(0, side), rng.uniform(0, side)) for _ in range(n)]
    cell = radius
    buckets: dict[tuple[int, int], list[int]] = {}
    for i, (x, y) in enumerate(pts):
        buckets.setdefault((int(x / cell), int(y / cell)), []).append(i)
    pairs = set()
    for (bx, by), members in buckets.items():
        near = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                near.extend(buckets.get((bx + dx, by + dy), ()))
        for i in members:
            xi, yi = pts[i]
            for j in near:
                if j <= i:
                    continue
                xj, yj = pts[j]
                if (xi - xj) ** 2 + (yi - yj) ** 2 <= radius * radius:
                    pairs.add((i, j))
    # Nearest-prior chain keeps the graph connected regardless of radius.
    order = list(range(n))
    rng.shuffle(order)
    for pos in range(1, n):
        i = order[pos]
        xi, yi = pts[i]
        best, best_d = -1, math.inf
        for j in order[:pos]:
            xj, yj = pts[j]
            d = (xi - xj) ** 2 + (yi - yj) ** 2
            if d < best_d:
                best, best_d = j, d
        pairs.add((min(i, best), max(i, best)))
    nodes = [f"{i} {_fmt(x)} {_fmt(y)}" for i, (x, y) in enumerate(pts)]
    edges = []
    for i, j in sorted(pairs):
        if gcfg.get("weights") == "euclidean":
            xi, yi = pts[i]
            xj, yj = pts[j]
            w = max(1.0 / 64.0, round(math.dist((xi, yi), (xj, yj)) * 64.0) / 64.0)
        else:
            w = _draw_weight(rng, lo, hi)
        edges.append(f"{i} {j} {_fmt(w)}")
    return nodes, edges, n


def _forest_lines(fcfg: dict):
    trees = int(fcfg.get("trees", 3))
    branching = int(fcfg.get("branching", 3))
    height = int(fcfg.get("height", 3))
    if trees < 1 or branching < 1 or height < 1:
        raise ValueError("forest needs at least one tree, branch, and level")
    lines = []
    leaves = []
    for t in range(trees):
        root = f"t{t}"
        lines.append(f"{root} -1 Tree{t}")
        frontier = [root]
        for level in range(2, height + 1):
            nxt = []
            for parent in frontier:
                for b in range(branching):
                    cid = f"{parent}.{b}"
                    lines.append(f"{cid} {parent} Cat_{cid}")
                    nxt.append(cid)
            frontier = nxt
        leaves.extend(frontier)
    return lines, leaves


def generate_synthetic_map(cfg: BenchConfig, seed: int, out_dir: str) -> Path:
    """Write a deterministic synthetic dataset (and its workload) to
    ``out_dir``. The same (cfg, seed) pair always produces identical bytes."""
    rng = random.Random(seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    kind = cfg.graph.get("kind", "grid")
    if kind == "grid":
        nodes, edges, n = _grid_lines(cfg.graph, rng)
    elif kind == "geometric":
        nodes, edges, n = _geometric_lines(cfg.graph, rng)
    else:
        raise ValueError(f"unknown graph kind {kind!r}")

    cat_lines, leaves = _forest_lines(cfg.forest)

    if "count" in cfg.pois:
        poi_count = int(cfg.pois["count"])
    else:
        poi_count = max(1, int(round(float(cfg.pois["ratio"]) * n)))
    if poi_count > n:
        raise ValueError(f"cannot place {poi_count} PoIs on {n} vertices")
    spots = rng.sample(range(n), poi_count)
    poi_lines = [
        f"p{k} {v} {rng.choice(leaves)}" for k, v in enumerate(spots)
    ]

    (out / "nodes.txt").write_text("# node_id x y\n" + "\n".join(nodes) + "\n")
    (out / "edges.txt").write_text("undirected\n" + "\n".join(edges) + "\n")
    (out / "pois.txt").write_text(
        "# poi_id node_id category_id\n" + "\n".join(poi_lines) + "\n"
    )
    (out / "categories.txt").write_text(
        "# category_id parent_id name\n" + "\n".join(cat_lines) + "\n"
    )

    g, f = load_dataset(out)
    wl_seed = cfg.workload.get("seed", seed)
    queries = generate_workload(
        g, f,
        n=int(cfg.workload.get("queries", 50)),
        size_range=tuple(cfg.workload.get("sizes", [2, 3])),
        seed=int(wl_seed),
    )
    (out / "workload.json").write_text(json.dumps(queries, indent=1) + "\n")
    return out


def load_dataset(data_dir) -> tuple[RoadGraph, CategoryForest]:
    d = Path(data_dir)
    f = CategoryForest.load(str(d / "categories.txt"))
    g = load_graph(
        str(d / "nodes.txt"), str(d / "edges.txt"), str(d / "pois.txt"), forest=f
    )
    return g, f


def generate_workload(
    g: RoadGraph,
    f: CategoryForest,
    n: int,
    size_range: tuple[int, int],
    seed: int,
) -> list[dict]:
    """Random queries: uniform start vertices; per query, categories drawn
    from distinct trees, restricted to the busier half of the leaf
    categories by PoI count."""
    lo, hi = size_range
    if lo < 1 or hi < lo:
        raise ValueError(f"bad size range {size_range}")
    leaves = [c for c in f.categories.values() if not f.children[c.id]]
    counts = {c.id: f.poi_count(c.id, g.pois) for c in leaves}
    ranked = sorted(leaves, key=lambda c: (-counts[c.id], c.id))
    eligible = ranked[: max(1, math.ceil(len(ranked) / 2))]
    # The busier-half cut must not silence a whole tree, so each tree's
    # busiest leaf stays eligible regardless.
    seen_trees = {c.tree for c in eligible}
    for c in ranked:
        if c.tree not in seen_trees:
            eligible.append(c)
            seen_trees.add(c.tree)
    by_tree: dict[str, list[str]] = {}
    for c in eligible:
        by_tree.setdefault(c.tree, []).append(c.id)
    trees = sorted(by_tree)
    if hi > len(trees):
        raise ValueError(
            f"workload needs {hi} distinct trees but only {len(trees)} have "
            f"eligible categories"
        )
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        size = rng.randint(lo, hi)
        picked = rng.sample(trees, size)
        cats = [rng.choice(sorted(by_tree[t])) for t in picked]
        out.append({"start": rng.choice(g.ids), "categories": cats})
    return out


_FLAG_SETS = {
    "bssr": SearchFlags(),
    "bssr_noopt": SearchFlags.none(),
    "bssr_no_init": SearchFlags(init_search=False),
    "bssr_no_pq": SearchFlags(pq_ordering=False),
    "bssr_no_bounds": SearchFlags(lower_bounds=False),
    "bssr_no_cache": SearchFlags(caching=False),
}

BENCH_COLUMNS = [
    "algo", "query", "start", "categories", "seq_size", "elapsed",
    "skyline_size", "visited_vertices", "dijkstra_executions",
    "queue_pushes", "pruned_routes", "cache_hits", "init_visited",
    "bounds_visited", "first_search_weight", "peak_routes",
    "route_mem_proxy", "mem_peak_bytes", "error",
]


def _run_one(g, f, algo: str, query: dict, trace_mem: bool) -> dict:
    row = {c: "" for c in BENCH_COLUMNS}
    row.update(
        algo=algo,
        start=query["start"],
        categories=" ".join(query["categories"]),
        seq_size=len(query["categories"]),
    )
    if trace_mem:
        tracemalloc.start()
    t0 = time.perf_counter()
    try:
        if algo in _FLAG_SETS:
            s, c = run_bssr(g, f, query["start"], query["categories"], _FLAG_SETS[algo])
            row.update(
                skyline_size=len(s),
                visited_vertices=c.visited_vertices,
                dijkstra_executions=c.dijkstra_executions,
                queue_pushes=c.queue_pushes,
                pruned_routes=c.pruned_routes,
                cache_hits=c.cache_hits,
                init_visited=c.init_visited,
                bounds_visited=c.bounds_visited,
                first_search_weight=round(c.first_search_weight, 9),
                peak_routes=c.peak_queue + len(s),
                route_mem_proxy=(c.peak_queue + len(s)) * len(query["categories"]),
            )
        elif algo == "iter_osr":
            res = iter_osr_skyline(g, f, query["start"], query["categories"])
            row.update(skyline_size=len(res))
        elif algo == "oracle":
            res = brute_force_skyline(g, f, query["start"], query["categories"])
            row.update(skyline_size=len(res))
        else:
            raise ValueError(f"unknown algo {algo!r}")
    except Exception as exc:  # keep the sweep going; the row says why
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["elapsed"] = round(time.perf_counter() - t0, 6)
    if trace_mem:
        _, peak = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        row["mem_peak_bytes"] = peak
    return row


def run_benchmark(
    data_dir,
    workload: Sequence[dict],
    algos: Sequence[str],
    out_path: str | None = None,
    fmt: str = "csv",
    workers: int = 1,
    trace_mem: bool = False,
) -> list[dict]:
    """Run every algo over every workload query and collect one row each.

    Timing rows are only comparable with ``workers=1``; memory tracing forces
    that as well since the allocator peak is process-wide.
    """
    g, f = load_dataset(data_dir)
    jobs = [(algo, i, q) for algo in algos for i, q in enumerate(workload)]
    if trace_mem:
        workers = 1
    rows: list[dict | None] = [None] * len(jobs)

    def work(slot):
        idx, (algo, qi, q) = slot
        row = _run_one(g, f, algo, q, trace_mem)
        row["query"] = qi
        rows[idx] = row

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(work, enumerate(jobs)))
    else:
        for slot in enumerate(jobs):
            work(slot)

    result = [r for r in rows if r is not None]
    if out_path:
        if fmt == "json":
            Path(out_path).write_text(json.dumps(result, indent=1) + "\n")
        else:
            with open(out_path, "w", newline="") as fh:
                wr = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
                wr.writeheader()
                wr.writerows(result)
    return result
