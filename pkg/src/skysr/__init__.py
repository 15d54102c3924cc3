"""Skyline sequenced-route queries over road networks."""

from .engine import SearchFlags, run_bssr
from .graph import RoadGraph, load_graph, shortest_path, snap_point
from .taxonomy import CategoryForest, semantic_score

__all__ = [
    "CategoryForest",
    "RoadGraph",
    "SearchFlags",
    "load_graph",
    "run_bssr",
    "semantic_score",
    "shortest_path",
    "snap_point",
]
__version__ = "0.1.0"
