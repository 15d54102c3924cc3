"""HTTP face of the query engine, plus static hosting for the companion UI.

The app is built per dataset via create_app(). Queries run on a bounded
thread pool so at most ``max_concurrent`` engine executions are in flight;
the graph and forest are shared read-only and every query gets its own
working state, so requests never observe each other. A query that outlives
the timeout gets a 504; its worker thread is abandoned to finish in the
background (the engine has no cancellation points).
"""

from __future__ import annotations

import asyncio
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .engine import SearchFlags, run_bssr
from .graph import snap_point
from .harness import load_dataset
from .records import build_query_record
from .taxonomy import CategoryForest


class QueryFlags(BaseModel):
    init_search: bool = True
    pq_ordering: bool = True
    lower_bounds: bool = True
    caching: bool = True
    path_filter: bool = True


class QueryRequest(BaseModel):
    start: str | None = None
    x: float | None = None
    y: float | None = None
    categories: list[str] = []
    flags: QueryFlags | None = None


def category_tree(f: CategoryForest, pois) -> list[dict]:
    """Forest as nested JSON; each count includes PoIs tagged with descendants."""

    def node(cid: str) -> dict:
        c = f.categories[cid]
        return {
            "id": c.id,
            "name": c.name,
            "parent": c.parent,
            "poi_count": f.poi_count(cid, pois),
            "children": [node(k) for k in f.children[cid]],
        }

    return [node(r) for r in f.roots]


def graph_payload(g) -> dict:
    if g.coords is None:
        raise HTTPException(404, "dataset has no vertex coordinates")
    seen = set()
    edges = []
    for u, nbrs in enumerate(g.adj):
        for v, _w in nbrs:
            key = (u, v) if g.directed else (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            edges.append([g.ids[key[0]], g.ids[key[1]]])
    return {
        "directed": g.directed,
        "vertices": [
            {"id": vid, "x": g.coords[i][0], "y": g.coords[i][1]}
            for i, vid in enumerate(g.ids)
        ],
        "edges": edges,
        "pois": [
            {"vertex": p.id, "category": p.category, "name": p.name}
            for p in g.pois
        ],
    }


def create_app(data_dir: str, max_concurrent: int | None = None,
               static_dir: str | None = None,
               query_timeout: float = 30.0) -> FastAPI:
    g, f = load_dataset(data_dir)
    workers = max_concurrent or os.cpu_count() or 4
    pool = ThreadPoolExecutor(max_workers=workers)
    app = FastAPI(title="skyline sequenced-route service")

    @app.get("/api/health")
    def health() -> dict:
        return {
            "status": "ok",
            "dataset": str(Path(data_dir).name),
            "counts": {
                "vertices": g.vertex_count,
                "edges": g.edge_count,
                "pois": len(g.pois),
                "categories": len(f.categories),
            },
        }

    @app.get("/api/categories")
    def categories() -> list[dict]:
        return category_tree(f, g.pois)

    @app.get("/api/graph")
    def graph() -> dict:
        return graph_payload(g)

    @app.post("/api/query")
    async def query(req: QueryRequest) -> dict:
        if not req.categories:
            raise HTTPException(400, "categories must be a non-empty list")
        for cid in req.categories:
            if cid not in f.categories:
                raise HTTPException(400, f"unknown category id {cid!r}")
        has_xy = req.x is not None and req.y is not None
        if (req.start is None) == (not has_xy):
            raise HTTPException(
                400, "give exactly one of 'start' or both 'x' and 'y'")
        if req.start is not None:
            if req.start not in g.index:
                raise HTTPException(400, f"unknown vertex id {req.start!r}")
            start = req.start
        else:
            try:
                start = snap_point(g, req.x, req.y)
            except ValueError as exc:
                raise HTTPException(400, str(exc)) from None
        flags = SearchFlags(**req.flags.model_dump()) if req.flags else SearchFlags()

        def work() -> dict:
            s, counters = run_bssr(g, f, start, req.categories, flags=flags)
            return build_query_record(
                g, start, req.categories,
                [(r.pois, r.sims, r.length, r.min_semantic) for r in s],
                counters.as_dict(), asdict(flags),
            )

        loop = asyncio.get_running_loop()
        try:
            return await asyncio.wait_for(
                loop.run_in_executor(pool, work), query_timeout)
        except asyncio.TimeoutError:
            raise HTTPException(
                504, f"query exceeded the {query_timeout:g}s limit") from None

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
