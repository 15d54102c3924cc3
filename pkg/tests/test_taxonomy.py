import pytest

from skysr.taxonomy import (
    IRRELEVANT,
    PERFECT,
    SEMANTIC,
    CategoryForest,
    ForestLoadError,
    semantic_score,
)


def test_depths(fixture_c):
    _g, f = fixture_c
    assert f.depth("food") == 1
    assert f.depth("asian") == 2
    assert f.depth("thai") == 3


def test_similarity_values(fixture_c):
    _g, f = fixture_c
    assert f.similarity("thai", "thai") == 1.0
    assert f.similarity("thai", "viet") == 2 * 2 / (3 + 3)
    assert f.similarity("thai", "asian") == 2 * 2 / (3 + 2)
    assert f.similarity("thai", "italian") == 2 * 1 / (3 + 2)
    assert f.similarity("asian", "italian") == 2 * 1 / (2 + 2)


def test_similarity_symmetric(fixture_c):
    _g, f = fixture_c
    cats = list(f.categories)
    for a in cats:
        for b in cats:
            assert f.similarity(a, b) == f.similarity(b, a)
            assert 0.0 < f.similarity(a, b) <= 1.0


def test_similarity_across_trees_is_zero(fixture_a):
    _g, f = fixture_a
    assert f.similarity("asian", "gift") == 0.0
    assert f.similarity("food", "shop") == 0.0


def test_match_kind(fixture_a):
    _g, f = fixture_a
    assert f.match_kind("asian", "asian") == PERFECT
    # PoI tagged with a descendant of the queried category matches perfectly.
    assert f.match_kind("asian", "food") == PERFECT
    assert f.match_kind("italian", "asian") == SEMANTIC
    # The other direction is only semantic: a generic Food PoI does not
    # answer a specifically Asian request.
    assert f.match_kind("food", "asian") == SEMANTIC
    assert f.match_kind("italian", "gift") == IRRELEVANT


def test_contribution_caps_perfect_at_one(fixture_c):
    _g, f = fixture_c
    assert f.contribution("thai", "asian") == 1.0
    assert f.contribution("asian", "thai") == 2 * 2 / (3 + 2)
    assert f.contribution("italian", "thai") == 2 * 1 / (3 + 2)


def test_contribution_zero_across_trees(fixture_a):
    _g, f = fixture_a
    assert f.contribution("gift", "asian") == 0.0


def test_roots_and_children(fixture_a):
    _g, f = fixture_a
    assert f.roots == ["food", "shop"]
    assert f.children["food"] == ["asian", "italian"]
    assert f.children["gift"] == []
    assert f.tree_of("hobby") == "shop"


def test_ancestors_self_then_upward(fixture_c):
    _g, f = fixture_c
    assert f.ancestors("thai") == ("thai", "asian", "food")
    assert f.ancestors("food") == ("food",)


def test_super_sequences(fixture_a):
    _g, f = fixture_a
    assert f.super_sequences(["asian", "gift"]) == [
        ("asian", "gift"),
        ("asian", "shop"),
        ("food", "gift"),
        ("food", "shop"),
    ]


def test_poi_count_includes_descendants(fixture_a, fixture_c):
    g, f = fixture_a
    assert f.poi_count("food", g.pois) == 2
    assert f.poi_count("shop", g.pois) == 2
    assert f.poi_count("asian", g.pois) == 1
    g, f = fixture_c
    assert f.poi_count("food", g.pois) == 4
    assert f.poi_count("asian", g.pois) == 3
    assert f.poi_count("viet", g.pois) == 1


def test_best_nonperfect_sim(fixture_c):
    _g, f = fixture_c
    present = {"viet", "thai", "italian"}
    assert f.best_nonperfect_sim("thai", present) == 2 * 2 / (3 + 3)
    assert f.best_nonperfect_sim("thai", {"thai"}) == 0.0
    assert f.best_nonperfect_sim("thai", set()) == 0.0


def test_validate_sequence(fixture_a):
    _g, f = fixture_a
    f.validate_sequence(["asian", "gift"])
    with pytest.raises(ValueError, match="non-empty"):
        f.validate_sequence([])
    with pytest.raises(ValueError, match="unknown category"):
        f.validate_sequence(["nosuch"])


def test_load_rejects_duplicates(tmp_path):
    p = tmp_path / "cats.txt"
    p.write_text("a -1 A\na -1 Again\n")
    with pytest.raises(ForestLoadError, match="duplicate"):
        CategoryForest.load(str(p))


def test_load_rejects_unknown_parent(tmp_path):
    p = tmp_path / "cats.txt"
    p.write_text("a ghost A\n")
    with pytest.raises(ForestLoadError, match="unknown parent"):
        CategoryForest.load(str(p))


def test_load_rejects_cycle(tmp_path):
    p = tmp_path / "cats.txt"
    p.write_text("a b A\nb a B\n")
    with pytest.raises(ForestLoadError, match="cycle"):
        CategoryForest.load(str(p))


def test_empty_forest(tmp_path):
    p = tmp_path / "cats.txt"
    p.write_text("# nothing here\n")
    f = CategoryForest.load(str(p))
    assert f.roots == []
    assert f.categories == {}


def test_semantic_score():
    assert semantic_score([]) == 0.0
    assert semantic_score([1.0, 1.0]) == 0.0
    assert semantic_score([0.5]) == 0.5
    assert semantic_score([0.5, 0.8]) == 1.0 - 0.5 * 0.8
    for bad in (0.0, -0.5, 1.5):
        with pytest.raises(ValueError, match="out of range"):
            semantic_score([bad])
