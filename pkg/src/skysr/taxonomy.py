"""Category forest and semantic scoring.

Categories live in a forest of rooted trees. A root has depth 1. A PoI whose
category is ``c`` also counts as an instance of every ancestor of ``c``, which
is what makes a query for an ancestor category a perfect match.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

PERFECT = "perfect"
SEMANTIC = "semantic"
IRRELEVANT = "irrelevant"


class ForestLoadError(Exception):
    """Raised for malformed or inconsistent category files."""


@dataclass(frozen=True)
class Category:
    id: str
    parent: str | None
    name: str
    depth: int
    tree: str
    # Chain from the category itself up to its root, in that order.
    ancestors: tuple[str, ...]


class CategoryForest:
    def __init__(self, categories: dict[str, Category]):
        self.categories = categories
        self.roots = [c.id for c in categories.values() if c.parent is None]
        self.children: dict[str, list[str]] = {cid: [] for cid in categories}
        for c in categories.values():
            if c.parent is not None:
                self.children[c.parent].append(c.id)
        self._ancestor_sets = {
            cid: frozenset(c.ancestors) for cid, c in categories.items()
        }
        self._sim_cache: dict[tuple[str, str], float] = {}

    @classmethod
    def load(cls, path: str) -> "CategoryForest":
        """Read ``category_id parent_id name`` records; parent -1 marks a root."""
        records = []
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                toks = line.split(None, 2)
                if len(toks) != 3:
                    raise ForestLoadError(
                        f"{path}:{lineno}: expected 'category_id parent_id name'"
                    )
                records.append((lineno, toks[0], toks[1], toks[2]))
        return cls.from_records(records, path)

    @classmethod
    def from_records(cls, records, path: str = "<records>") -> "CategoryForest":
        parent_of: dict[str, str | None] = {}
        names: dict[str, str] = {}
        lines: dict[str, int] = {}
        for lineno, cid, parent, name in records:
            if cid in parent_of:
                raise ForestLoadError(f"{path}:{lineno}: duplicate category id {cid!r}")
            parent_of[cid] = None if parent == "-1" else parent
            names[cid] = name
            lines[cid] = lineno
        for cid, parent in parent_of.items():
            if parent is not None and parent not in parent_of:
                raise ForestLoadError(
                    f"{path}:{lines[cid]}: category {cid!r} has unknown parent {parent!r}"
                )

        categories: dict[str, Category] = {}

        def build(cid: str, seen: tuple[str, ...]) -> Category:
            if cid in categories:
                return categories[cid]
            if cid in seen:
                raise ForestLoadError(
                    f"{path}:{lines[cid]}: category {cid!r} is part of a parent cycle"
                )
            parent = parent_of[cid]
            if parent is None:
                cat = Category(cid, None, names[cid], 1, cid, (cid,))
            else:
                p = build(parent, seen + (cid,))
                cat = Category(
                    cid, parent, names[cid], p.depth + 1, p.tree, (cid,) + p.ancestors
                )
            categories[cid] = cat
            return cat

        for cid in parent_of:
            build(cid, ())
        return cls(categories)

    def _get(self, cid: str) -> Category:
        try:
            return self.categories[cid]
        except KeyError:
            raise ValueError(f"unknown category id {cid!r}") from None

    def ancestors(self, cid: str) -> tuple[str, ...]:
        """The category itself followed by its ancestors, ending at the root."""
        return self._get(cid).ancestors

    def tree_of(self, cid: str) -> str:
        return self._get(cid).tree

    def depth(self, cid: str) -> int:
        return self._get(cid).depth

    def similarity(self, c1: str, c2: str) -> float:
        """Wu-Palmer similarity: 2 * d(dca) / (d(c1) + d(c2)).

        dca is the deepest common ancestor; categories in different trees
        score 0. Equal categories score 1; everything else lands strictly
        between.
        """
        key = (c1, c2) if c1 <= c2 else (c2, c1)
        cached = self._sim_cache.get(key)
        if cached is not None:
            return cached
        a = self._get(c1)
        b = self._get(c2)
        if a.tree != b.tree:
            sim = 0.0
        else:
            bset = self._ancestor_sets[c2]
            dca_depth = 0
            for anc in a.ancestors:
                if anc in bset:
                    dca_depth = self.categories[anc].depth
                    break
            sim = 2.0 * dca_depth / (a.depth + b.depth)
        self._sim_cache[key] = sim
        return sim

    def match_kind(self, poi_cat: str, query_cat: str) -> str:
        """Classify how a PoI's category answers a queried category.

        perfect: same category, or the query is an ancestor of the PoI's
        category (the PoI counts as an instance of it). semantic: same tree
        otherwise. irrelevant: different trees.
        """
        a = self._get(poi_cat)
        b = self._get(query_cat)
        if poi_cat == query_cat or query_cat in self._ancestor_sets[poi_cat]:
            return PERFECT
        if a.tree == b.tree:
            return SEMANTIC
        return IRRELEVANT

    def contribution(self, poi_cat: str, query_cat: str) -> float:
        """Per-stop similarity factor used by the semantic score."""
        kind = self.match_kind(poi_cat, query_cat)
        if kind == PERFECT:
            return 1.0
        if kind == SEMANTIC:
            return self.similarity(poi_cat, query_cat)
        return 0.0

    def best_nonperfect_sim(self, query_cat: str, present: Iterable[str]) -> float:
        """Largest similarity a non-perfect match among ``present`` categories
        can contribute for ``query_cat``; 0 when only perfect matches exist."""
        best = 0.0
        for cat in present:
            if self.match_kind(cat, query_cat) == SEMANTIC:
                s = self.similarity(cat, query_cat)
                if s > best:
                    best = s
        return best

    def min_semantic_increment(
        self,
        route_product: float,
        remaining: Sequence[str],
        present_categories: Sequence[Iterable[str]],
    ) -> float:
        """Smallest semantic-score increase any completion that includes at
        least one non-perfect match must pay.

        ``route_product`` is the product of the partial route's similarity
        factors; ``present_categories[i]`` are the category ids that actually
        occur among dataset PoIs relevant to ``remaining[i]``.
        """
        if len(remaining) != len(present_categories):
            raise ValueError("remaining and present_categories must align")
        h_star = 0.0
        for query_cat, present in zip(remaining, present_categories):
            h = self.best_nonperfect_sim(query_cat, present)
            if h > h_star:
                h_star = h
        return route_product * (1.0 - h_star)

    def validate_sequence(self, seq: Sequence[str]) -> None:
        if not seq:
            raise ValueError("category sequence must be non-empty")
        for cid in seq:
            self._get(cid)

    def super_sequences(self, seq: Sequence[str]) -> list[tuple[str, ...]]:
        """All sequences obtained by lifting each entry to itself or one of
        its ancestors, in self-then-upward order per position."""
        self.validate_sequence(seq)
        return list(itertools.product(*(self.ancestors(c) for c in seq)))

    def poi_count(self, cid: str, pois) -> int:
        """PoIs answering ``cid`` perfectly, i.e. tagged with it or a descendant."""
        cset = self._get(cid)
        return sum(1 for p in pois if cset.id in self._ancestor_sets[p.category])


def semantic_score(sims: Sequence[float]) -> float:
    """1 minus the product of per-stop similarity factors (left to right).

    Every factor must be in (0, 1]; a zero factor would mean the stop is not
    semantically related at all and the route is invalid.
    """
    prod = 1.0
    for s in sims:
        if not 0.0 < s <= 1.0:
            raise ValueError(f"similarity factor out of range (0, 1]: {s}")
        prod *= s
    return 1.0 - prod
