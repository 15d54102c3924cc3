import math

import pytest

from skysr.engine import (
    DOMINATED,
    DOMINATES,
    EQUIVALENT,
    INCOMPARABLE,
    CacheEntry,
    QueryContext,
    Route,
    SearchFlags,
    SkylineSet,
    cache_lookup,
    compute_min_distances,
    dominates,
    lower_bound_prune,
    modified_dijkstra,
    nninit,
    run_bssr,
    skyline_update,
    threshold,
)
from skysr.harness import load_dataset

from conftest import write_dataset

GOLDEN_A = [(2.0, 0.5), (10.0, 0.0)]


def _route(length, score):
    # A full route whose only sim factor realizes the wanted score.
    return Route(("x",), length, (1.0 - score,), 1.0 - score)


def test_dominates_relations():
    assert dominates((1.0, 0.5), (2.0, 0.5)) == DOMINATES
    assert dominates((2.0, 0.5), (1.0, 0.5)) == DOMINATED
    assert dominates((1.0, 0.5), (1.0, 0.5)) == EQUIVALENT
    assert dominates((1.0, 0.8), (2.0, 0.5)) == INCOMPARABLE
    assert dominates((1.0, 0.0), (2.0, 0.5)) == DOMINATES


def test_skyline_update_and_threshold():
    s = SkylineSet()
    assert threshold(s, 0.0) == math.inf
    assert skyline_update(s, _route(5.0, 0.5))
    assert skyline_update(s, _route(10.0, 0.0))
    assert s.scores() == [(5.0, 0.5), (10.0, 0.0)]
    # Same score pair: reject, first representative wins.
    assert not skyline_update(s, _route(5.0, 0.5))
    # Dominated: reject.
    assert not skyline_update(s, _route(6.0, 0.5))
    # Dominating: evicts the (5.0, 0.5) member.
    assert skyline_update(s, _route(2.0, 0.5))
    assert s.scores() == [(2.0, 0.5), (10.0, 0.0)]

    assert threshold(s, 0.5) == 2.0
    assert threshold(s, 0.2) == 10.0
    assert threshold(s, 1.0) == 2.0
    assert threshold(s, -0.1) == math.inf


def test_skyline_stays_sorted_and_minimal():
    s = SkylineSet()
    for length, score in [(7.0, 0.1), (3.0, 0.9), (5.0, 0.4), (4.0, 0.6)]:
        skyline_update(s, _route(length, score))
    lengths = [r.length for r in s]
    scores = [r.min_semantic for r in s]
    assert lengths == sorted(lengths)
    assert scores == sorted(scores, reverse=True)
    for i, a in enumerate(s):
        for j, b in enumerate(s):
            if i != j:
                assert dominates(a.score, b.score) == INCOMPARABLE


def test_route_extend_accumulates():
    r = Route((), 0.0, (), 1.0)
    r1 = r.extend("p", 2.0, 0.5)
    r2 = r1.extend("q", 3.0, 1.0)
    assert r2.pois == ("p", "q")
    assert r2.length == 5.0
    assert r2.sims == (0.5, 1.0)
    assert r2.min_semantic == 0.5
    # Parent is untouched and the bound never improves by extending.
    assert r1.pois == ("p",)
    assert r2.min_semantic >= r1.min_semantic


def test_flag_matrix_is_all_sixteen():
    combos = SearchFlags.matrix()
    assert len(combos) == 16
    assert len(set(combos)) == 16
    assert all(fl.path_filter for fl in combos)


def test_golden_all_flags(fixture_a):
    g, f = fixture_a
    s, _c = run_bssr(g, f, "v0", ["asian", "gift"])
    assert s.scores() == GOLDEN_A
    routes = list(s)
    assert routes[0].pois == ("pI", "pG")
    assert routes[1].pois == ("pA", "pG")
    assert routes[0].sims == (0.5, 1.0)


def test_golden_no_flags(fixture_a):
    g, f = fixture_a
    s, _c = run_bssr(g, f, "v0", ["asian", "gift"], flags=SearchFlags.none())
    assert s.scores() == GOLDEN_A


def test_single_position_query(fixture_a):
    g, f = fixture_a
    s, _c = run_bssr(g, f, "v0", ["asian"])
    assert s.scores() == [(1.0, 0.5), (4.0, 0.0)]


def test_nninit_seeds(fixture_a):
    g, f = fixture_a
    ctx = QueryContext(g, f, "v0", ["asian", "gift"])
    s = nninit(g, f, ctx)
    assert s.scores() == [(5.0, 0.5), (10.0, 0.0)]
    assert [r.pois for r in s] == [("pA", "pH"), ("pA", "pG")]
    assert ctx.counters.init_dijkstras == 2
    assert ctx.counters.init_visited == 9


def test_lower_bound_tables(fixture_a):
    g, f = fixture_a
    ctx = QueryContext(g, f, "v0", ["asian", "gift"])
    s = nninit(g, f, ctx)
    b = compute_min_distances(g, f, ctx, s)
    assert b.ls_hops == [1.0]
    assert b.lp_hops == [1.0]
    assert b.ls_suffix == [1.0, 0.0, 0.0]
    assert b.lp_suffix == [1.0, 0.0, 0.0]


def test_lower_bound_prune_keeps_reachable_route(fixture_a):
    g, f = fixture_a
    ctx = QueryContext(g, f, "v0", ["asian", "gift"])
    s = nninit(g, f, ctx)
    compute_min_distances(g, f, ctx, s)
    # One stop done at pI: 1 + 1 remaining < threshold(0.5) = 5.
    r = Route(("pI",), 1.0, (0.5,), 0.5)
    assert not lower_bound_prune(ctx, r, s)


def test_lower_bound_prune_drops_hopeless_route(fixture_b):
    g, f = fixture_b
    ctx = QueryContext(g, f, "v0", ["asian", "gift"])
    s = nninit(g, f, ctx)
    compute_min_distances(g, f, ctx, s)
    skyline_update(s, Route(("pI", "pG"), 2.0, (0.5, 1.0), 0.5))
    # The detour seed: 3 + 1 remaining >= threshold(0.5) = 2.
    r = Route(("pJ",), 3.0, (0.5,), 0.5)
    assert lower_bound_prune(ctx, r, s)


def test_bare_threshold_prune_without_flag(fixture_a):
    g, f = fixture_a
    ctx = QueryContext(g, f, "v0", ["asian", "gift"],
                       flags=SearchFlags.none())
    s = SkylineSet()
    skyline_update(s, Route(("pI", "pG"), 2.0, (0.5, 1.0), 0.5))
    assert lower_bound_prune(ctx, Route(("pA",), 4.0, (0.5,), 0.5), s)
    assert not lower_bound_prune(ctx, Route(("pA",), 1.5, (0.5,), 0.5), s)


def test_cache_lookup_semantics(fixture_a):
    g, f = fixture_a
    ctx = QueryContext(g, f, "v0", ["asian", "gift"])
    s = nninit(g, f, ctx)
    modified_dijkstra(g, f, ctx, Route((), 0.0, (), 1.0), s, [])
    ent = ctx.cache[(g.index["v0"], 0)]
    assert ent.coverage == math.inf
    assert ent.entries == ((1.0, g.index["pI"], 0.5), (4.0, g.index["pA"], 1.0))

    hits = cache_lookup(ctx, "v0", 1, budget=2.0)
    assert hits == [("pI", 1.0, 0.5)]
    hits = cache_lookup(ctx, "v0", 1, budget=20.0)
    assert hits == [("pI", 1.0, 0.5), ("pA", 4.0, 1.0)]
    assert cache_lookup(ctx, "pG", 1, budget=1.0) is None


def test_cache_rejects_undersized_coverage(fixture_a):
    g, f = fixture_a
    ctx = QueryContext(g, f, "v0", ["asian", "gift"])
    ctx.cache[(g.index["v0"], 0)] = CacheEntry(2.0, ((1.0, g.index["pI"], 0.5),))
    assert cache_lookup(ctx, "v0", 1, budget=3.0) is None
    assert cache_lookup(ctx, "v0", 1, budget=2.0) == [("pI", 1.0, 0.5)]


def test_fixture_a_counters(fixture_a):
    g, f = fixture_a
    _s, c = run_bssr(g, f, "v0", ["asian", "gift"])
    got = c.as_dict()
    got.pop("elapsed")
    assert got == {
        "visited_vertices": 11,
        "dijkstra_executions": 3,
        "queue_pushes": 2,
        "pruned_routes": 0,
        "peak_queue": 2,
        "cache_hits": 0,
        "init_visited": 9,
        "init_dijkstras": 2,
        "bounds_visited": 9,
        "bounds_dijkstras": 2,
        "first_search_weight": 8.0 / 14.0,
    }


def test_counters_reproducible(fixture_a):
    g, f = fixture_a
    _s1, c1 = run_bssr(g, f, "v0", ["asian", "gift"])
    _s2, c2 = run_bssr(g, f, "v0", ["asian", "gift"])
    d1, d2 = c1.as_dict(), c2.as_dict()
    d1.pop("elapsed")
    d2.pop("elapsed")
    assert d1 == d2


def test_replay_events(fixture_b):
    g, f = fixture_b
    s, _c = run_bssr(g, f, "v0", ["asian", "gift"], record_events=True)
    assert s.scores() == GOLDEN_A
    assert s.events == [
        # Seeding inserts two incomparable routes.
        ("accept", (5.0, 0.5), ()),
        ("accept", (10.0, 0.0), ()),
        ("init_end", ((5.0, 0.5), (10.0, 0.0))),
        # The equally scored two-stop route via pA is turned away.
        ("reject", (5.0, 0.5)),
        # The route through pI completes and evicts the dominated member.
        ("accept", (2.0, 0.5), ((5.0, 0.5),)),
        # The seeded detour through pJ dies at the queue top.
        ("discard", (3.0, 0.5)),
    ]


def test_ladder_skyline(fixture_c):
    g, f = fixture_c
    s, _c = run_bssr(g, f, "v0", ["thai"])
    assert s.scores() == [
        (2.0, 1 - 2 / 5),
        (4.0, 1 - 4 / 6),
        (6.0, 1 - 4 / 5),
        (9.0, 0.0),
    ]
    assert [r.pois for r in s] == [("pIt",), ("pV",), ("pAs",), ("pT",)]


def test_repeated_tree_positions_stay_exact(fixture_c):
    # Both positions draw from the same tree, so the structural shortcuts
    # are off and plain bounded enumeration answers.
    g, f = fixture_c
    s, _c = run_bssr(g, f, "v0", ["thai", "thai"])
    assert s.scores() == [
        (4.0, 1 - (2 / 5) * (4 / 6)),
        (6.0, 1 - (4 / 6) * (4 / 5)),
        (9.0, 1 - 4 / 5),
    ]


def test_zero_match_position_short_circuits(tmp_path):
    d = write_dataset(
        tmp_path,
        "a 0 0\nb 1 0\n",
        "undirected\na b 1\n",
        "pb b t1.leaf\n",
        "t1 -1 TreeOne\nt1.leaf t1 LeafOne\nt2 -1 TreeTwo\nt2.leaf t2 LeafTwo\n",
    )
    g, f = load_dataset(d)
    s, c = run_bssr(g, f, "a", ["t2.leaf"])
    assert len(s) == 0
    assert c.visited_vertices == 0
    assert c.dijkstra_executions == 0


def test_distinctness_exhausts_single_candidate(tmp_path):
    d = write_dataset(
        tmp_path,
        "a 0 0\nb 1 0\nc 2 0\n",
        "undirected\na b 1\nb c 1\n",
        "pb b t1.leaf\npc c t2.leaf\n",
        "t1 -1 TreeOne\nt1.leaf t1 LeafOne\nt2 -1 TreeTwo\nt2.leaf t2 LeafTwo\n",
    )
    g, f = load_dataset(d)
    # The only PoI matching t1.leaf cannot fill both positions.
    s, _c = run_bssr(g, f, "a", ["t1.leaf", "t1.leaf"])
    assert len(s) == 0


def test_directed_dataset_query(tmp_path):
    d = write_dataset(
        tmp_path,
        "a 0 0\nb 1 0\nc 2 0\n",
        "directed\na b 1\nb c 1\nc a 10\n",
        "pb b t1.leaf\npc c t2.leaf\n",
        "t1 -1 TreeOne\nt1.leaf t1 LeafOne\nt2 -1 TreeTwo\nt2.leaf t2 LeafTwo\n",
    )
    g, f = load_dataset(d)
    for flags in (SearchFlags(), SearchFlags.none()):
        s, _c = run_bssr(g, f, "a", ["t1.leaf", "t2.leaf"], flags=flags)
        assert s.scores() == [(2.0, 0.0)]
        # Stops are identified by the vertex they sit on.
        assert list(s)[0].pois == ("b", "c")


def test_unknown_inputs_raise(fixture_a):
    g, f = fixture_a
    with pytest.raises(ValueError, match="unknown vertex"):
        run_bssr(g, f, "nope", ["asian"])
    with pytest.raises(ValueError, match="unknown category"):
        run_bssr(g, f, "v0", ["nope"])
    with pytest.raises(ValueError, match="non-empty"):
        run_bssr(g, f, "v0", [])


def test_path_filter_toggle_same_scores(fixture_c):
    g, f = fixture_c
    on, _ = run_bssr(g, f, "v0", ["thai"])
    off, _ = run_bssr(g, f, "v0", ["thai"], flags=SearchFlags(path_filter=False))
    assert on.scores() == off.scores()
