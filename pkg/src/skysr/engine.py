"""Exact skyline search for sequenced routes.

A query is a start vertex plus an ordered list of category ids. A candidate
route visits one semantically matching PoI per position, in order, and is
scored twice: network length, and one minus the product of per-stop
similarity factors. The engine returns the minimal non-dominated set of
routes under those two scores.

The search is branch and bound: partial routes live on a priority queue and
are grown one stop at a time by a threshold-bounded Dijkstra sweep from their
last stop. Four independently switchable optimizations (greedy seeding, queue
ordering, lower-bound tables, expansion caching) only change how much work is
done, never the returned score set.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass
from typing import Sequence

from .graph import RoadGraph
from .taxonomy import CategoryForest, PERFECT

DOMINATES = "dominates"
DOMINATED = "dominated"
EQUIVALENT = "equivalent"
INCOMPARABLE = "incomparable"

_INF = math.inf


def dominates(a: tuple[float, float], b: tuple[float, float]) -> str:
    """Relate two (length, semantic score) pairs.

    Lower is better on both axes. "dominates" means a is at least as good on
    both and strictly better on one; equal pairs are "equivalent".
    """
    la, sa = a
    lb, sb = b
    if la == lb and sa == sb:
        return EQUIVALENT
    if la <= lb and sa <= sb:
        return DOMINATES
    if lb <= la and sb <= sa:
        return DOMINATED
    return INCOMPARABLE


class Route:
    """An immutable (possibly partial) stop assignment.

    ``min_semantic`` is the semantic score the route already cannot go below:
    for a full route it is the semantic score itself, for a partial route it
    assumes every remaining stop matches perfectly.
    """

    __slots__ = ("pois", "length", "sims", "sim_product", "min_semantic")

    def __init__(self, pois: tuple[str, ...], length: float,
                 sims: tuple[float, ...], sim_product: float):
        self.pois = pois
        self.length = length
        self.sims = sims
        self.sim_product = sim_product
        self.min_semantic = 1.0 - sim_product

    def extend(self, poi_id: str, dist: float, sim: float) -> "Route":
        return Route(self.pois + (poi_id,), self.length + dist,
                     self.sims + (sim,), self.sim_product * sim)

    @property
    def size(self) -> int:
        return len(self.pois)

    @property
    def score(self) -> tuple[float, float]:
        return (self.length, self.min_semantic)

    def __repr__(self) -> str:
        return f"Route({list(self.pois)}, l={self.length:g}, s={self.min_semantic:g})"


EMPTY_ROUTE = Route((), 0.0, (), 1.0)


class SkylineSet:
    """Mutable skyline of full routes, kept sorted by ascending length.

    Invariant: lengths strictly increase and scores strictly decrease along
    the list, so for every score level the first member at or below it has
    the minimal length.
    """

    def __init__(self, events: list | None = None):
        self.routes: list[Route] = []
        self.events = events

    def __len__(self) -> int:
        return len(self.routes)

    def __iter__(self):
        return iter(self.routes)

    def scores(self) -> list[tuple[float, float]]:
        return [r.score for r in self.routes]

    def update(self, route: Route) -> bool:
        """Insert ``route`` unless a member dominates or equals it; evict
        members it dominates. Returns True when the route was kept."""
        rs = route.score
        for m in self.routes:
            rel = dominates(m.score, rs)
            if rel == DOMINATES or rel == EQUIVALENT:
                if self.events is not None:
                    self.events.append(("reject", rs))
                return False
        evicted = [m for m in self.routes if dominates(rs, m.score) == DOMINATES]
        if evicted:
            gone = {id(m) for m in evicted}
            self.routes = [m for m in self.routes if id(m) not in gone]
        lo, hi = 0, len(self.routes)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.routes[mid].length < route.length:
                lo = mid + 1
            else:
                hi = mid
        self.routes.insert(lo, route)
        if self.events is not None:
            self.events.append(("accept", rs, tuple(m.score for m in evicted)))
        return True

    def threshold(self, min_semantic: float) -> float:
        """Shortest member length among members whose semantic score is at
        most ``min_semantic``; +inf when there is none.

        A candidate with that floor on its semantic score is dominated or
        equaled by such a member as soon as its length reaches the returned
        value, so reaching it means the candidate can be dropped.
        """
        for m in self.routes:
            if m.min_semantic <= min_semantic:
                return m.length
        return _INF


def skyline_update(s: SkylineSet, route: Route) -> bool:
    return s.update(route)


def threshold(s: SkylineSet, min_semantic: float) -> float:
    return s.threshold(min_semantic)


@dataclass(frozen=True)
class SearchFlags:
    """Optimization switches. The first four are the benchmark matrix;
    ``path_filter`` is the structural skip applied during expansion sweeps
    and exists so tests can measure its effect in isolation."""

    init_search: bool = True
    pq_ordering: bool = True
    lower_bounds: bool = True
    caching: bool = True
    path_filter: bool = True

    @classmethod
    def none(cls) -> "SearchFlags":
        return cls(init_search=False, pq_ordering=False,
                   lower_bounds=False, caching=False)

    @classmethod
    def matrix(cls) -> list["SearchFlags"]:
        """All 16 combinations of the four benchmark switches."""
        out = []
        for a, b, c, d in itertools.product((False, True), repeat=4):
            out.append(cls(init_search=a, pq_ordering=b, lower_bounds=c, caching=d))
        return out


@dataclass
class Counters:
    visited_vertices: int = 0
    dijkstra_executions: int = 0
    queue_pushes: int = 0
    pruned_routes: int = 0
    peak_queue: int = 0
    cache_hits: int = 0
    init_visited: int = 0
    init_dijkstras: int = 0
    bounds_visited: int = 0
    bounds_dijkstras: int = 0
    first_search_weight: float = 0.0
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "visited_vertices": self.visited_vertices,
            "dijkstra_executions": self.dijkstra_executions,
            "queue_pushes": self.queue_pushes,
            "pruned_routes": self.pruned_routes,
            "peak_queue": self.peak_queue,
            "cache_hits": self.cache_hits,
            "init_visited": self.init_visited,
            "init_dijkstras": self.init_dijkstras,
            "bounds_visited": self.bounds_visited,
            "bounds_dijkstras": self.bounds_dijkstras,
            "first_search_weight": self.first_search_weight,
            "elapsed": self.elapsed,
        }


@dataclass(frozen=True)
class CacheEntry:
    """Materialized expansion result for one (source vertex, position) pair.

    ``entries`` holds (distance, vertex index, similarity) for every
    admissible next stop found within ``coverage`` of the source, in settle
    order. The entry answers any request whose distance budget does not
    exceed ``coverage``.
    """

    coverage: float
    entries: tuple[tuple[float, int, float], ...]


@dataclass
class LowerBounds:
    ls_hops: list[float]
    lp_hops: list[float]
    ls_suffix: list[float]
    lp_suffix: list[float]


class QueryContext:
    """Per-query working state: precomputed match tables, optimization flag
    set, lower-bound tables, expansion cache, and counters."""

    def __init__(self, g: RoadGraph, f: CategoryForest, start: str,
                 seq: Sequence[str], flags: SearchFlags | None = None,
                 record_events: bool = False):
        f.validate_sequence(seq)
        self.g = g
        self.f = f
        self.start = start
        self.start_idx = g.vertex_index(start)
        self.seq = tuple(seq)
        self.flags = flags or SearchFlags()
        self.counters = Counters()
        self.events: list | None = [] if record_events else None
        self.cache: dict[tuple[int, int], CacheEntry] = {}

        n = len(self.seq)
        trees = [f.tree_of(c) for c in self.seq]
        # Positions whose category tree recurs elsewhere in the sequence lose
        # the structural shortcuts: an on-path PoI there may already be used
        # by the route (or be needed later), so neither the path filter nor
        # the stop-at-perfect cutoff is sound. Distinct-tree queries, the
        # normal case, keep both.
        self.hazard = [trees.count(t) > 1 for t in trees]
        self.contrib: list[dict[int, float]] = []
        self.perfect: list[frozenset[int]] = []
        best_nonperfect = []
        for k, cat in enumerate(self.seq):
            cmap: dict[int, float] = {}
            pset = set()
            present: set[str] = set()
            for p in g.pois:
                sim = f.contribution(p.category, cat)
                if sim > 0.0:
                    vi = g.index[p.id]
                    cmap[vi] = sim
                    present.add(p.category)
                    if f.match_kind(p.category, cat) == PERFECT:
                        pset.add(vi)
            self.contrib.append(cmap)
            self.perfect.append(frozenset(pset))
            best_nonperfect.append(f.best_nonperfect_sim(cat, present))
        # suffix_best[m] bounds the best non-perfect factor any stop at
        # position >= m can contribute; used for the semantic-increment prune.
        self.suffix_best = [0.0] * (n + 1)
        for m in range(n - 1, -1, -1):
            self.suffix_best[m] = max(best_nonperfect[m], self.suffix_best[m + 1])
        self.bounds: LowerBounds | None = None
        self.ls_suffix = [0.0] * (n + 1)
        self.lp_suffix = [0.0] * (n + 1)
        self.total_arc_weight = sum(w for nbrs in g.adj for _, w in nbrs) or 1.0
        self._push_seq = 0

    def delta(self, route: Route) -> float:
        """Minimum semantic-score increase for any completion of ``route``
        that uses at least one non-perfect stop."""
        return route.sim_product * (1.0 - self.suffix_best[route.size])


def lower_bound_prune(ctx: QueryContext, route: Route, s: SkylineSet) -> bool:
    """True when ``route`` provably cannot reach the skyline.

    Always applies the threshold test; with the lower-bounds flag the test
    gains the remaining-hops slack, plus the semantic-increment argument:
    if even an all-perfect completion is covered by a member once the
    minimum perfect-hop lengths are added, and any non-perfect completion
    is covered by the semantic increment alone, nothing survivable is left.
    """
    ubar = route.min_semantic
    # Remaining legs of a size-m route start with the hop from stop m-1 to
    # position m, so the suffix sums are read from hop index m-1.
    j = route.size - 1 if route.size else 0
    if ctx.flags.lower_bounds:
        if route.length + ctx.ls_suffix[j] >= s.threshold(ubar):
            return True
        if (s.threshold(ubar + ctx.delta(route)) <= route.length
                and s.threshold(ubar) <= route.length + ctx.lp_suffix[j]):
            return True
        return False
    return route.length >= s.threshold(ubar)


def nninit(g: RoadGraph, f: CategoryForest, ctx: QueryContext) -> SkylineSet:
    """Greedy nearest-neighbor seeding.

    Hops through the closest perfectly matching PoI for every position but
    the last; on the final sweep every semantically matching PoI encountered
    becomes a candidate route, and the sweep ends at the first perfect one.
    Whenever each position has a reachable perfect match not already used,
    the returned set therefore contains a semantic-score-0 route.
    """
    s = SkylineSet(events=ctx.events)
    n = len(ctx.seq)
    route = EMPTY_ROUTE
    used: set[int] = set()
    cur = ctx.start_idx
    counters = ctx.counters
    adj = g.adj
    nvert = g.vertex_count
    for k in range(n):
        last = k == n - 1
        contrib = ctx.contrib[k]
        perfect = ctx.perfect[k]
        dist = [_INF] * nvert
        done = bytearray(nvert)
        dist[cur] = 0.0
        heap = [(0.0, cur)]
        counters.init_dijkstras += 1
        hop = None
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = 1
            counters.init_visited += 1
            if last:
                sim = contrib.get(u)
                if sim is not None and u not in used:
                    s.update(route.extend(g.ids[u], d, sim))
                    if u in perfect:
                        break
            elif u in perfect and u not in used:
                hop = (u, d)
                break
            for v, w in adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        if last:
            break
        if hop is None:
            break
        u, d = hop
        route = route.extend(g.ids[u], d, 1.0)
        used.add(u)
        cur = u
    return s


def compute_min_distances(g: RoadGraph, f: CategoryForest, ctx: QueryContext,
                          s: SkylineSet) -> LowerBounds:
    """Per-hop minimum distances between consecutive positions' match sets.

    One multi-source sweep per hop: sources are PoIs semantically matching
    position i, and the sweep records the first settled semantic match of
    position i+1 (ls) and the first settled perfect match (lp). PoIs farther
    from the start than the current all-perfect threshold cannot appear on a
    surviving route and are left out. Missing sources or destinations make
    the affected minimum 0, which only weakens the bound; lp is then lifted
    to ls, still sound because a perfect next stop is in particular a
    semantic one (and when none exists the lp bound is vacuous anyway).
    """
    n = len(ctx.seq)
    ls = [0.0] * max(n - 1, 0)
    lp = [0.0] * max(n - 1, 0)
    counters = ctx.counters
    radius = s.threshold(0.0)
    eligible = None
    if not math.isinf(radius):
        dist0 = _bounded_dijkstra(g, ctx.start_idx, radius, counters)
        eligible = [d < radius for d in dist0]

    adj = g.adj
    nvert = g.vertex_count
    for i in range(n - 1):
        sources = [v for v in ctx.contrib[i]
                   if eligible is None or eligible[v]]
        dest_sem = {v for v in ctx.contrib[i + 1]
                    if eligible is None or eligible[v]}
        dest_perf = {v for v in ctx.perfect[i + 1]
                     if eligible is None or eligible[v]}
        if not sources or not dest_sem:
            continue
        counters.bounds_dijkstras += 1
        dist = [_INF] * nvert
        done = bytearray(nvert)
        heap = []
        for v in sources:
            dist[v] = 0.0
            heap.append((0.0, v))
        heapq.heapify(heap)
        got_sem = False
        got_perf = not dest_perf
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = 1
            counters.bounds_visited += 1
            if not got_sem and u in dest_sem:
                ls[i] = d
                got_sem = True
            if not got_perf and u in dest_perf:
                lp[i] = d
                got_perf = True
            if got_sem and got_perf:
                break
            for v, w in adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))

    for i in range(n - 1):
        if lp[i] < ls[i]:
            lp[i] = ls[i]
    bounds = LowerBounds(
        ls_hops=ls,
        lp_hops=lp,
        ls_suffix=[0.0] * (n + 1),
        lp_suffix=[0.0] * (n + 1),
    )
    for m in range(n - 2, -1, -1):
        bounds.ls_suffix[m] = ls[m] + bounds.ls_suffix[m + 1]
        bounds.lp_suffix[m] = lp[m] + bounds.lp_suffix[m + 1]
    ctx.bounds = bounds
    ctx.ls_suffix = bounds.ls_suffix
    ctx.lp_suffix = bounds.lp_suffix
    return bounds


def _bounded_dijkstra(g: RoadGraph, source: int, radius: float,
                      counters: Counters) -> list[float]:
    """Distances from ``source``; popping stops once the frontier reaches
    ``radius``, leaving farther vertices at +inf."""
    counters.bounds_dijkstras += 1
    dist = [_INF] * g.vertex_count
    done = bytearray(g.vertex_count)
    dist[source] = 0.0
    heap = [(0.0, source)]
    adj = g.adj
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        if d >= radius:
            break
        done[u] = 1
        counters.bounds_visited += 1
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def cache_lookup(ctx: QueryContext, p_d: str, position: int, budget: float):
    """Cached expansion for searches from ``p_d`` filling 1-based
    ``position``. Returns (vertex id, distance, similarity) triples within
    ``budget``, or None when no stored sweep covers the request."""
    ent = ctx.cache.get((ctx.g.vertex_index(p_d), position - 1))
    if ent is None or ent.coverage < budget:
        return None
    return [(ctx.g.ids[v], d, sim) for d, v, sim in ent.entries if d < budget]


def _consider(ctx: QueryContext, route: Route, u: int, d: float, sim: float,
              s: SkylineSet, qb: list, complete: bool) -> None:
    nr = route.extend(ctx.g.ids[u], d, sim)
    if complete:
        s.update(nr)
        return
    if lower_bound_prune(ctx, nr, s):
        ctx.counters.pruned_routes += 1
        return
    ctx._push_seq += 1
    ctx.counters.queue_pushes += 1
    if ctx.flags.pq_ordering:
        key = (-nr.size, nr.min_semantic, nr.length, ctx._push_seq)
    else:
        key = (nr.length, ctx._push_seq)
    heapq.heappush(qb, (key, nr))
    if len(qb) > ctx.counters.peak_queue:
        ctx.counters.peak_queue = len(qb)


def modified_dijkstra(g: RoadGraph, f: CategoryForest, ctx: QueryContext,
                      route: Route, s: SkylineSet, qb: list) -> None:
    """Grow ``route`` by one stop.

    Threshold-bounded Dijkstra from the route's last stop (or the query
    start). Every settled vertex that semantically matches the position,
    is not already used, and passes the path filter becomes a next stop:
    full routes go through skyline_update, partial ones onto the queue.

    The sweep stops as soon as the frontier distance makes every further
    route reach the current threshold; the threshold is re-read on every
    settle since accepted routes tighten it mid-sweep. At positions without
    tree recurrence, edges out of a perfectly matching vertex are not
    relaxed: anything behind it is reachable only through an equal-or-better
    stop and cannot contribute a new skyline score.
    """
    k = route.size
    complete = k + 1 == len(ctx.seq)
    p_d = g.index[route.pois[-1]] if route.pois else ctx.start_idx
    base = route.length
    ubar = route.min_semantic
    counters = ctx.counters
    limit = s.threshold(ubar)
    if limit - base <= 0.0:
        return
    used = {g.index[p] for p in route.pois}

    if ctx.flags.caching:
        ent = ctx.cache.get((p_d, k))
        if ent is not None and ent.coverage >= limit - base:
            counters.cache_hits += 1
            for d, u, sim in ent.entries:
                if base + d >= s.threshold(ubar):
                    break
                if u in used:
                    continue
                _consider(ctx, route, u, d, sim, s, qb, complete)
            return

    counters.dijkstra_executions += 1
    contrib = ctx.contrib[k]
    perfect = ctx.perfect[k]
    hazard = ctx.hazard[k]
    use_filter = ctx.flags.path_filter and not hazard
    is_seed = not route.pois
    adj = g.adj
    nvert = g.vertex_count
    dist = [_INF] * nvert
    pbest = [0.0] * nvert
    done = bytearray(nvert)
    dist[p_d] = 0.0
    heap = [(0.0, p_d)]
    entries: list[tuple[float, int, float]] = []
    coverage = _INF
    seed_weight = 0.0

    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        if base + d >= s.threshold(ubar):
            coverage = d
            break
        done[u] = 1
        counters.visited_vertices += 1
        sim = contrib.get(u)
        if sim is not None:
            if hazard:
                entries.append((d, u, sim))
                if u not in used:
                    _consider(ctx, route, u, d, sim, s, qb, complete)
            elif not use_filter or sim > pbest[u]:
                entries.append((d, u, sim))
                _consider(ctx, route, u, d, sim, s, qb, complete)
        if not hazard and u in perfect:
            continue
        npb = pbest[u] if sim is None else max(pbest[u], sim)
        for v, w in adj[u]:
            if is_seed:
                seed_weight += w
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                pbest[v] = npb
                heapq.heappush(heap, (nd, v))

    if is_seed:
        counters.first_search_weight = seed_weight / ctx.total_arc_weight
    if ctx.flags.caching:
        old = ctx.cache.get((p_d, k))
        if old is None or coverage > old.coverage:
            ctx.cache[(p_d, k)] = CacheEntry(coverage, tuple(entries))


def run_bssr(g: RoadGraph, f: CategoryForest, start: str, seq: Sequence[str],
             flags: SearchFlags | None = None,
             record_events: bool = False) -> tuple[SkylineSet, Counters]:
    """Answer a skyline sequenced-route query exactly.

    Returns the minimal non-dominated set of routes (one representative per
    tied score pair) and the work counters for the run.
    """
    t0 = time.perf_counter()
    ctx = QueryContext(g, f, start, seq, flags, record_events=record_events)
    if any(not cmap for cmap in ctx.contrib):
        # Some position has no semantically matching PoI at all, so no
        # complete route exists; skip the pointless whole-graph sweep.
        s = SkylineSet(events=ctx.events)
        ctx.counters.elapsed = time.perf_counter() - t0
        return s, ctx.counters
    if ctx.flags.init_search:
        s = nninit(g, f, ctx)
    else:
        s = SkylineSet(events=ctx.events)
    if ctx.events is not None:
        ctx.events.append(("init_end", tuple(r.score for r in s)))
    if ctx.flags.lower_bounds:
        compute_min_distances(g, f, ctx, s)
    qb: list = []
    modified_dijkstra(g, f, ctx, EMPTY_ROUTE, s, qb)
    while qb:
        _key, route = heapq.heappop(qb)
        if lower_bound_prune(ctx, route, s):
            ctx.counters.pruned_routes += 1
            if ctx.events is not None:
                ctx.events.append(("discard", route.score))
            continue
        modified_dijkstra(g, f, ctx, route, s, qb)
    ctx.counters.elapsed = time.perf_counter() - t0
    return s, ctx.counters
