import math

import pytest

from skysr.baselines import (
    ScoredRoute,
    brute_force_skyline,
    iter_osr_skyline,
    osr_exact,
    pareto_filter,
)
from skysr.engine import DOMINATES, EQUIVALENT, INCOMPARABLE, dominates
from skysr.graph import shortest_path
from skysr.harness import load_dataset

from conftest import write_dataset

TWO_TREES = (
    "t1 -1 TreeOne\nt1.leaf t1 LeafOne\nt2 -1 TreeTwo\nt2.leaf t2 LeafTwo\n"
)


def test_oracle_golden(fixture_a):
    g, f = fixture_a
    got = brute_force_skyline(g, f, "v0", ["asian", "gift"])
    assert [(r.length, r.score) for r in got] == [(2.0, 0.5), (10.0, 0.0)]
    assert [r.stops for r in got] == [("pI", "pG"), ("pA", "pG")]
    assert got[0].sims == (0.5, 1.0)


def test_oracle_single_position(fixture_a):
    g, f = fixture_a
    got = brute_force_skyline(g, f, "v0", ["asian"])
    assert [(r.length, r.score) for r in got] == [(1.0, 0.5), (4.0, 0.0)]


def test_oracle_zero_match_position(tmp_path):
    d = write_dataset(
        tmp_path,
        "a 0 0\nb 1 0\n",
        "undirected\na b 1\n",
        "pb b t1.leaf\n",
        TWO_TREES,
    )
    g, f = load_dataset(d)
    assert brute_force_skyline(g, f, "a", ["t2.leaf"]) == []


def test_oracle_guard(fixture_a):
    g, f = fixture_a
    with pytest.raises(ValueError, match="enumeration guard"):
        brute_force_skyline(g, f, "v0", ["asian", "gift"], max_candidates=3)


def test_oracle_members_cover_all_candidates(fixture_c):
    # Independently enumerate every distinct stop pair and confirm each is
    # dominated by or equivalent to some returned member.
    g, f = fixture_c
    seq = ["thai", "thai"]
    members = brute_force_skyline(g, f, "v0", seq)
    member_scores = [(r.length, r.score) for r in members]
    for a, b in zip(member_scores, member_scores[1:]):
        assert dominates(a, b) == INCOMPARABLE

    matches = [p for p in g.pois if f.contribution(p.category, "thai") > 0.0]
    assert len(matches) == 4
    for p1 in matches:
        for p2 in matches:
            if p1.id == p2.id:
                continue
            length = shortest_path(g, "v0", p1.id)[0] + shortest_path(g, p1.id, p2.id)[0]
            score = 1.0 - (f.contribution(p1.category, "thai")
                           * f.contribution(p2.category, "thai"))
            assert any(
                dominates(m, (length, score)) in (DOMINATES, EQUIVALENT)
                for m in member_scores
            )


def test_osr_prefers_closer_ancestor_association(fixture_a):
    g, f = fixture_a
    assert osr_exact(g, f, "v0", ["food", "gift"]) == (2.0, ["pI", "pG"])
    assert osr_exact(g, f, "v0", ["asian", "gift"]) == (10.0, ["pA", "pG"])


def test_osr_unsatisfiable(fixture_a, tmp_path):
    g, f = fixture_a
    # Only one Asian PoI exists, so two distinct stops cannot be found.
    assert osr_exact(g, f, "v0", ["asian", "asian"]) is None
    d = write_dataset(
        tmp_path,
        "a 0 0\nb 1 0\n",
        "undirected\na b 1\n",
        "pb b t1.leaf\n",
        TWO_TREES,
    )
    g2, f2 = load_dataset(d)
    assert osr_exact(g2, f2, "a", ["t2.leaf"]) is None


def test_osr_rejects_repeated_stop_and_researches(tmp_path):
    d = write_dataset(
        tmp_path,
        "v0 0 0\np1 1 0\np2 4 0\n",
        "undirected\nv0 p1 1\np1 p2 3\n",
        "a1 p1 t1.leaf\na2 p2 t1.leaf\n",
        TWO_TREES,
    )
    g, f = load_dataset(d)
    assert osr_exact(g, f, "v0", ["t1.leaf", "t1.leaf"]) == (4.0, ["p1", "p2"])


def test_iter_osr_finds_both_on_desk_fixture(fixture_a):
    g, f = fixture_a
    got = iter_osr_skyline(g, f, "v0", ["asian", "gift"])
    assert [(r.length, r.score) for r in got] == [(2.0, 0.5), (10.0, 0.0)]


def test_iter_osr_misses_sibling_tradeoff(fixture_c):
    g, f = fixture_c
    truth = brute_force_skyline(g, f, "v0", ["thai"])
    got = iter_osr_skyline(g, f, "v0", ["thai"])
    truth_scores = [(r.length, r.score) for r in truth]
    got_scores = [(r.length, r.score) for r in got]
    assert len(truth_scores) == 4
    assert got_scores == [s for s in truth_scores if s[0] != 6.0]
    # The missed member is the sibling-category stop: similar but not an
    # ancestor association, so no super-sequence run can produce it.
    assert (6.0, 1 - 4 / 5) in truth_scores


def test_iter_osr_equals_oracle_on_single_category_tree(tmp_path):
    d = write_dataset(
        tmp_path,
        "a 0 0\nb 1 0\nc 2 0\n",
        "undirected\na b 1\nb c 1\n",
        "pb b only\npc c only\n",
        "only -1 OnlyCategory\n",
    )
    g, f = load_dataset(d)
    truth = brute_force_skyline(g, f, "a", ["only"])
    got = iter_osr_skyline(g, f, "a", ["only"])
    assert [(r.length, r.score) for r in got] == [
        (r.length, r.score) for r in truth]


def test_pareto_filter_keeps_deterministic_representative():
    a = ScoredRoute(2.0, 0.5, ("x", "y"), (0.5, 1.0))
    b = ScoredRoute(2.0, 0.5, ("x", "z"), (0.5, 1.0))
    assert pareto_filter([b, a]) == [a]
    assert pareto_filter([a, b]) == [a]


def test_pareto_filter_drops_dominated():
    rows = [
        ScoredRoute(1.0, 0.9, ("a",), (0.1,)),
        ScoredRoute(2.0, 0.9, ("b",), (0.1,)),
        ScoredRoute(3.0, 0.1, ("c",), (0.9,)),
        ScoredRoute(4.0, 0.0, ("d",), (1.0,)),
    ]
    kept = pareto_filter(rows)
    assert [r.stops for r in kept] == [("a",), ("c",), ("d",)]


def test_unreachable_stays_out(tmp_path):
    # Directed arcs let a reach b but not c; candidate pairs through c are
    # silently infeasible rather than scored with infinities.
    d = write_dataset(
        tmp_path,
        "a 0 0\nb 1 0\nc 2 0\n",
        "directed\na b 1\nc b 1\n",
        "pb b t1.leaf\npc c t2.leaf\n",
        TWO_TREES,
    )
    g, f = load_dataset(d)
    assert brute_force_skyline(g, f, "a", ["t1.leaf", "t2.leaf"]) == []
    assert brute_force_skyline(g, f, "a", ["t1.leaf"]) != []
