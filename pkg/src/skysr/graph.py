"""Road network model and shortest-path primitives.

Vertices are identified by opaque string ids from the input files. Internally
every vertex gets a dense integer index so the search loops run over plain
lists; public functions accept and return the external ids.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field


class GraphLoadError(Exception):
    """Raised for malformed or inconsistent network input files."""


@dataclass(frozen=True)
class PoiVertex:
    """A point of interest sitting on a graph vertex.

    ``id`` is the vertex id the PoI occupies, ``category`` the category id it
    carries, and ``name`` the label column from the PoI file.
    """

    id: str
    category: str
    name: str


@dataclass
class RoadGraph:
    ids: list[str]
    index: dict[str, int]
    adj: list[list[tuple[int, float]]]
    directed: bool
    coords: list[tuple[float, float]] | None
    pois: list[PoiVertex]
    poi_category: dict[int, str] = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return len(self.ids)

    @property
    def edge_count(self) -> int:
        arcs = sum(len(a) for a in self.adj)
        return arcs if self.directed else arcs // 2

    def vertex_index(self, vertex_id: str) -> int:
        try:
            return self.index[vertex_id]
        except KeyError:
            raise ValueError(f"unknown vertex id {vertex_id!r}") from None


def _sort_key(vertex_id: str) -> tuple:
    # Numeric ids order numerically so a tie between ids 3 and 7 picks 3
    # even when 10 is also in play; everything else orders lexically.
    try:
        return (0, int(vertex_id), "")
    except ValueError:
        return (1, 0, vertex_id)


def _data_lines(path: str):
    """Yield (line_number, tokens) for non-empty, non-comment lines."""
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, line.split()


def load_graph(
    node_file: str,
    edge_file: str,
    poi_file: str,
    directed: bool | None = None,
    forest=None,
) -> RoadGraph:
    """Load a road network from whitespace-separated text files.

    ``directed``: None takes the orientation from the edge file header
    (defaulting to undirected); a bool must agree with the header when one is
    present. ``forest``, when given, is used to validate PoI category ids.

    Raises GraphLoadError with the file name and line number for parse
    problems, dangling references, non-positive weights, duplicate
    definitions, and disconnected networks.
    """
    ids: list[str] = []
    index: dict[str, int] = {}
    coords: list[tuple[float, float]] = []
    saw_coords: bool | None = None

    for lineno, toks in _data_lines(node_file):
        if len(toks) not in (1, 3):
            raise GraphLoadError(
                f"{node_file}:{lineno}: expected 'node_id [x y]', got {len(toks)} fields"
            )
        vid = toks[0]
        if vid in index:
            raise GraphLoadError(f"{node_file}:{lineno}: duplicate vertex id {vid!r}")
        has_xy = len(toks) == 3
        if saw_coords is None:
            saw_coords = has_xy
        elif saw_coords != has_xy:
            raise GraphLoadError(
                f"{node_file}:{lineno}: coordinates must be present for all vertices or none"
            )
        if has_xy:
            try:
                coords.append((float(toks[1]), float(toks[2])))
            except ValueError:
                raise GraphLoadError(
                    f"{node_file}:{lineno}: bad coordinate in {toks[1:]!r}"
                ) from None
        index[vid] = len(ids)
        ids.append(vid)

    if not ids:
        raise GraphLoadError(f"{node_file}: no vertices defined")

    edges: list[tuple[int, int, float]] = []
    header_directed: bool | None = None
    first = True
    with open(edge_file, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if first:
                first = False
                if len(toks) == 1 and toks[0] in ("directed", "undirected"):
                    header_directed = toks[0] == "directed"
                    continue
            if len(toks) != 3:
                raise GraphLoadError(
                    f"{edge_file}:{lineno}: expected 'u v weight', got {line!r}"
                )
            u, v, wtok = toks
            for vid in (u, v):
                if vid not in index:
                    raise GraphLoadError(
                        f"{edge_file}:{lineno}: unknown vertex id {vid!r}"
                    )
            try:
                w = float(wtok)
            except ValueError:
                raise GraphLoadError(
                    f"{edge_file}:{lineno}: bad weight {wtok!r}"
                ) from None
            if not w > 0 or math.isinf(w) or math.isnan(w):
                raise GraphLoadError(
                    f"{edge_file}:{lineno}: edge weight must be positive and finite, got {wtok}"
                )
            edges.append((index[u], index[v], w))

    if directed is not None and header_directed is not None and directed != header_directed:
        raise GraphLoadError(
            f"{edge_file}: header says "
            f"{'directed' if header_directed else 'undirected'} "
            f"but loader was asked for the opposite"
        )
    if directed is not None:
        is_directed = directed
    else:
        is_directed = bool(header_directed)

    adj: list[list[tuple[int, float]]] = [[] for _ in ids]
    for ui, vi, w in edges:
        adj[ui].append((vi, w))
        if not is_directed:
            adj[vi].append((ui, w))

    pois: list[PoiVertex] = []
    poi_category: dict[int, str] = {}
    for lineno, toks in _data_lines(poi_file):
        if len(toks) != 3:
            raise GraphLoadError(
                f"{poi_file}:{lineno}: expected 'poi_id node_id category_id'"
            )
        name, vid, cat = toks
        if vid not in index:
            raise GraphLoadError(
                f"{poi_file}:{lineno}: PoI {name!r} references unknown vertex {vid!r}"
            )
        if forest is not None and cat not in forest.categories:
            raise GraphLoadError(
                f"{poi_file}:{lineno}: PoI {name!r} references unknown category {cat!r}"
            )
        vi = index[vid]
        if vi in poi_category:
            raise GraphLoadError(
                f"{poi_file}:{lineno}: vertex {vid!r} already carries a PoI category"
            )
        poi_category[vi] = cat
        pois.append(PoiVertex(id=vid, category=cat, name=name))

    g = RoadGraph(
        ids=ids,
        index=index,
        adj=adj,
        directed=is_directed,
        coords=coords if saw_coords else None,
        pois=pois,
        poi_category=poi_category,
    )
    _check_connected(g, edge_file)
    return g


def _check_connected(g: RoadGraph, edge_file: str) -> None:
    """Reject disconnected input. Directed graphs are checked on the
    underlying undirected structure; strong connectivity is not required."""
    n = g.vertex_count
    if n <= 1:
        return
    und: list[list[int]] = [[] for _ in range(n)]
    for u, nbrs in enumerate(g.adj):
        for v, _w in nbrs:
            und[u].append(v)
            und[v].append(u)
    seen = bytearray(n)
    seen[0] = 1
    stack = [0]
    reached = 1
    while stack:
        u = stack.pop()
        for v in und[u]:
            if not seen[v]:
                seen[v] = 1
                reached += 1
                stack.append(v)
    if reached != n:
        missing = next(g.ids[i] for i in range(n) if not seen[i])
        raise GraphLoadError(
            f"{edge_file}: graph is disconnected "
            f"({reached} of {n} vertices reachable; e.g. {missing!r} is cut off)"
        )


def dijkstra(g: RoadGraph, source: int, target: int | None = None):
    """Single-source Dijkstra over vertex indices.

    Returns (dist, parent) lists; dist is math.inf for unreached vertices.
    Stops early once ``target`` is settled.
    """
    n = g.vertex_count
    dist = [math.inf] * n
    parent = [-1] * n
    dist[source] = 0.0
    done = bytearray(n)
    heap = [(0.0, source)]
    adj = g.adj
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        d, u = pop(heap)
        if done[u]:
            continue
        done[u] = 1
        if u == target:
            break
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                push(heap, (nd, v))
    return dist, parent


def shortest_path(g: RoadGraph, u_id: str, v_id: str) -> tuple[float, list[str]]:
    """Shortest distance and one witness vertex path from u to v.

    Returns (math.inf, []) when v is unreachable; (0.0, [u]) when u == v.
    """
    u = g.vertex_index(u_id)
    v = g.vertex_index(v_id)
    if u == v:
        return 0.0, [u_id]
    dist, parent = dijkstra(g, u, target=v)
    if math.isinf(dist[v]):
        return math.inf, []
    path = [v]
    cur = v
    while cur != u:
        cur = parent[cur]
        path.append(cur)
    path.reverse()
    return dist[v], [g.ids[i] for i in path]


def snap_point(g: RoadGraph, x: float, y: float) -> str:
    """Nearest vertex to (x, y) by Euclidean distance.

    Ties go to the smallest vertex id (numeric ids compare numerically).
    Raises ValueError when the graph has no coordinates.
    """
    if g.coords is None:
        raise ValueError("graph has no vertex coordinates; cannot snap a point")
    best_i = -1
    best_d = math.inf
    for i, (cx, cy) in enumerate(g.coords):
        d = (cx - x) * (cx - x) + (cy - y) * (cy - y)
        if d < best_d or (d == best_d and best_i >= 0
                          and _sort_key(g.ids[i]) < _sort_key(g.ids[best_i])):
            best_d = d
            best_i = i
    return g.ids[best_i]
