"""Reference implementations the engine is checked against.

These deliberately share no search code with the engine. The brute-force
enumerator is the ground truth; the OSR-based pair is the comparison baseline
from prior work (fast, but its skyline can miss members, see
``iter_osr_skyline``).
"""

from __future__ import annotations

import heapq
import itertools
import math
from typing import NamedTuple, Sequence

from .graph import RoadGraph, dijkstra
from .taxonomy import CategoryForest


class ScoredRoute(NamedTuple):
    length: float
    score: float
    stops: tuple[str, ...]
    sims: tuple[float, ...]


def pareto_filter(items: list[ScoredRoute]) -> list[ScoredRoute]:
    """Minimal non-dominated subset, one representative per equal score pair.

    Sorting by (length, score, stops) makes the kept representative for a
    tied pair deterministic.
    """
    ordered = sorted(items, key=lambda r: (r.length, r.score, r.stops))
    kept: list[ScoredRoute] = []
    best = math.inf
    for r in ordered:
        if r.score < best:
            kept.append(r)
            best = r.score
    return kept


def _candidate_lists(
    g: RoadGraph, f: CategoryForest, seq: Sequence[str]
) -> list[list[tuple[int, float]]]:
    lists: list[list[tuple[int, float]]] = []
    for cat in seq:
        row = []
        for p in g.pois:
            sim = f.contribution(p.category, cat)
            if sim > 0.0:
                row.append((g.index[p.id], sim))
        lists.append(row)
    return lists


def brute_force_skyline(
    g: RoadGraph,
    f: CategoryForest,
    start: str,
    seq: Sequence[str],
    max_candidates: int = 10_000_000,
) -> list[ScoredRoute]:
    """Enumerate every stop assignment, score it, and Pareto-filter.

    Exponential in |seq|; refuses instances whose raw candidate product
    exceeds ``max_candidates``.
    """
    f.validate_sequence(seq)
    start_idx = g.vertex_index(start)
    lists = _candidate_lists(g, f, seq)
    total = 1
    for row in lists:
        total *= len(row)
    if total == 0:
        return []
    if total > max_candidates:
        raise ValueError(
            f"candidate product {total} exceeds the enumeration guard {max_candidates}"
        )

    sources = {start_idx}
    for row in lists[:-1]:
        sources.update(v for v, _ in row)
    dist_from = {s: dijkstra(g, s)[0] for s in sources}

    out: list[ScoredRoute] = []
    for combo in itertools.product(*lists):
        ids = tuple(v for v, _ in combo)
        if len(set(ids)) != len(ids):
            continue
        length = dist_from[start_idx][ids[0]]
        prev = ids[0]
        ok = not math.isinf(length)
        if ok:
            for v, _ in combo[1:]:
                step = dist_from[prev][v]
                if math.isinf(step):
                    ok = False
                    break
                length += step
                prev = v
        if not ok:
            continue
        prod = 1.0
        for _, s in combo:
            prod *= s
        out.append(
            ScoredRoute(
                length=length,
                score=1.0 - prod,
                stops=tuple(g.ids[v] for v in ids),
                sims=tuple(s for _, s in combo),
            )
        )
    return pareto_filter(out)


def osr_exact(
    g: RoadGraph,
    f: CategoryForest,
    start: str,
    seq: Sequence[str],
) -> tuple[float, list[str]] | None:
    """Shortest route visiting, in order, one PoI answering each category
    perfectly (the category itself or a descendant).

    Label-setting over (vertex, matched-prefix) states. Stop distinctness is
    restored after the fact: when a reconstruction repeats a PoI, the
    offending (position, vertex) assignment is banned and the search reruns.
    """
    f.validate_sequence(seq)
    start_idx = g.vertex_index(start)
    n = g.vertex_count
    k_max = len(seq)

    advance: list[set[int]] = []
    for cat in seq:
        ok = {
            g.index[p.id]
            for p in g.pois
            if f.match_kind(p.category, cat) == "perfect"
        }
        if not ok:
            return None
        advance.append(ok)

    banned: set[tuple[int, int]] = set()
    for _attempt in range(n * k_max + 1):
        result = _osr_search(g, start_idx, advance, banned, n, k_max)
        if result is None:
            return None
        length, stops = result
        dup = _first_repeat(stops)
        if dup is None:
            return length, [g.ids[v] for v in stops]
        banned.add(dup)
    return None


def _first_repeat(stops: list[int]) -> tuple[int, int] | None:
    seen: dict[int, int] = {}
    for k, v in enumerate(stops):
        if v in seen:
            return (k, v)
        seen[v] = k
    return None


def _osr_search(g, start_idx, advance, banned, n, k_max):
    size = n * (k_max + 1)
    dist = [math.inf] * size
    parent = [-1] * size
    done = bytearray(size)
    s0 = start_idx * (k_max + 1)
    dist[s0] = 0.0
    heap = [(0.0, s0)]
    adj = g.adj
    goal = -1
    while heap:
        d, st = heapq.heappop(heap)
        if done[st]:
            continue
        done[st] = 1
        v, k = divmod(st, k_max + 1)
        if k == k_max:
            goal = st
            break
        if v in advance[k] and (k, v) not in banned:
            nst = st + 1
            if d < dist[nst]:
                dist[nst] = d
                parent[nst] = st
                heapq.heappush(heap, (d, nst))
        for u, w in adj[v]:
            nst = u * (k_max + 1) + k
            nd = d + w
            if nd < dist[nst]:
                dist[nst] = nd
                parent[nst] = st
                heapq.heappush(heap, (nd, nst))
    if goal < 0:
        return None
    stops = []
    st = goal
    while st != s0:
        prev = parent[st]
        if prev // (k_max + 1) == st // (k_max + 1) and prev % (k_max + 1) + 1 == st % (k_max + 1):
            stops.append(st // (k_max + 1))
        st = prev
    stops.reverse()
    return dist[goal], stops


def iter_osr_skyline(
    g: RoadGraph,
    f: CategoryForest,
    start: str,
    seq: Sequence[str],
) -> list[ScoredRoute]:
    """Run the OSR baseline once per super-sequence of ``seq`` and
    Pareto-filter the scored results.

    Each position of a super-sequence lifts the queried category to itself or
    an ancestor, so coarser runs can surface semantically related stops. This
    is a performance baseline: one shortest route per super-sequence is not
    enough to recover every skyline member.
    """
    results: list[ScoredRoute] = []
    for sseq in f.super_sequences(seq):
        hit = osr_exact(g, f, start, sseq)
        if hit is None:
            continue
        length, stops = hit
        sims = tuple(
            f.contribution(g.poi_category[g.index[s]], cat)
            for s, cat in zip(stops, seq)
        )
        prod = 1.0
        for s in sims:
            prod *= s
        results.append(ScoredRoute(length, 1.0 - prod, tuple(stops), sims))
    return pareto_filter(results)
