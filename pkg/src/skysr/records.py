"""Serializable query results shared by the CLI and the HTTP service.

Both front ends emit the same shape so their outputs can be compared
byte for byte once the timing fields are masked: a ``query`` echo, the
``routes`` list sorted by ascending length (each with per-leg vertex paths
and coordinate geometry), a ``no_route`` flag, and the work counters.
"""

from __future__ import annotations

from typing import Sequence

from .graph import RoadGraph, shortest_path


def route_record(g: RoadGraph, start: str, pois: Sequence[str],
                 sims: Sequence[float], length: float, score: float) -> dict:
    """One route: stop ids, their categories and similarities, both scores,
    and one witness leg (vertex ids plus [x, y] points) per hop."""
    legs = []
    prev = start
    for p in pois:
        _d, path = shortest_path(g, prev, p)
        leg = {"vertices": path, "geometry": []}
        if g.coords is not None:
            leg["geometry"] = [list(g.coords[g.index[v]]) for v in path]
        legs.append(leg)
        prev = p
    labels = {p.id: p.name for p in g.pois}
    return {
        "pois": list(pois),
        "names": [labels[p] for p in pois],
        "categories": [g.poi_category[g.index[p]] for p in pois],
        "similarities": list(sims),
        "length": length,
        "semantic_score": score,
        "legs": legs,
    }


def build_query_record(g: RoadGraph, start: str, seq: Sequence[str],
                       routes: Sequence[tuple], counters: dict,
                       flags: dict | None) -> dict:
    """Assemble the full response.

    ``routes`` holds (pois, sims, length, score) tuples already sorted by
    ascending length; ``counters`` is the engine counter dict (the oracle
    passes zeros); ``flags`` echoes the optimization switches, None when the
    producer has no such switches.
    """
    return {
        "query": {"start": start, "categories": list(seq), "flags": flags},
        "no_route": not routes,
        "routes": [
            route_record(g, start, pois, sims, length, score)
            for pois, sims, length, score in routes
        ],
        "counters": dict(counters),
        "elapsed": counters.get("elapsed", 0.0),
    }
