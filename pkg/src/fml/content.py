"""Exact Hausdorff content of finite cell unions.

The content of a set E is the infimum of sum_j mu(I_j)**rho over coverings of
E by basic cubes, rho in (0,1].  For a finite union of cells the infimum is a
minimum attained on an antichain of cubes each meeting E (the disjoint-cover
reduction), so it is computable exactly by dynamic programming on the trie
spanned by E's cells:

    cost(node) = mu(node)**rho                      if node is a cell of E
    cost(node) = min(mu(node)**rho, sum children)   otherwise

Descending *below* a cell never helps: covering a whole cube by its children
costs sum_i mu(child_i)**rho >= mu(cube)**rho because rho <= 1.

All cover costs funnel through one evaluation helper built on math.fsum, so
the DP and the brute-force enumerator return bit-identical minima; ties are
broken toward the parent cube, which yields the coarsest optimal cover.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Union

from .errors import ResourceLimitError
from .ifs import CellSet, IteratedFunctionSystem, Word, cube_measure

_BRUTE_FORCE_BUDGET = 10_000_000


@dataclass(frozen=True)
class ContentExponent:
    """The single parameter rho = alpha/s in (0,1] every content depends on."""

    rho: float

    def __post_init__(self):
        if not 0.0 < self.rho <= 1.0:
            raise ValueError(f"content exponent must lie in (0,1], got {self.rho}")

    @classmethod
    def from_alpha(cls, alpha: float, dimension: float) -> "ContentExponent":
        if not 0.0 < alpha <= dimension:
            raise ValueError(f"need 0 < alpha <= dimension, got alpha={alpha}, s={dimension}")
        return cls(alpha / dimension)


RhoLike = Union[float, ContentExponent]


def as_rho(rho: RhoLike) -> float:
    if isinstance(rho, ContentExponent):
        return rho.rho
    return ContentExponent(float(rho)).rho


def measure_power(mu: float, rho: float) -> float:
    # rho == 1 must reproduce mu exactly (the content then coincides with the measure)
    return mu if rho == 1.0 else mu**rho


def cover_cost(ifs: IteratedFunctionSystem, words, rho: RhoLike) -> float:
    """sum mu(w)**rho over a cover, correctly rounded (order-independent)."""
    r = as_rho(rho)
    return math.fsum(measure_power(cube_measure(ifs, w), r) for w in words)


def _build_trie(cells: CellSet) -> dict:
    """Nested dict trie; a node maps symbols to children, None key marks a cell."""
    root: dict = {}
    for w in cells:
        node = root
        for s in w:
            node = node.setdefault(s, {})
        node[None] = True
    return root


def optimal_cover(ifs: IteratedFunctionSystem, cells: CellSet, rho: RhoLike):
    """(content, cover) where cover is a coarsest optimal antichain of cubes."""
    r = as_rho(rho)
    if cells.is_empty():
        return 0.0, CellSet(())
    trie = _build_trie(cells)

    def best(node: dict, word: Word, mu: float):
        own = measure_power(mu, r)
        if None in node:
            return [word]
        child_words = []
        for sym, child in node.items():
            child_words.extend(best(child, word + (sym,), mu * ifs.probabilities[sym]))
        if own <= cover_cost(ifs, child_words, r):
            return [word]
        return child_words

    cover = best(trie, (), 1.0)
    return cover_cost(ifs, cover, r), CellSet(tuple(cover))


def hausdorff_content(ifs: IteratedFunctionSystem, cells: CellSet, rho: RhoLike) -> float:
    """Exact infimum of sum mu(I_j)**rho over basic-cube covers of the cell union."""
    return optimal_cover(ifs, cells, rho)[0]


# ---------------------------------------------------------------------------
# independent oracle: exhaustive antichain-cover enumeration
# ---------------------------------------------------------------------------


def _meets(trie_node, inside: bool) -> bool:
    return inside or trie_node is not None


def _count_covers(ifs, trie_node, inside, depth_left) -> int:
    """Number of antichain covers (by cubes meeting E) the enumerator will visit."""
    if not _meets(trie_node, inside):
        return 1
    if depth_left == 0:
        return 1
    node_inside = inside or (None in trie_node if trie_node is not None else False)
    total = 1
    for sym in range(ifs.num_maps):
        if node_inside:
            total *= _count_covers(ifs, None, True, depth_left - 1)
        else:
            child = trie_node.get(sym)
            if child is not None:
                total *= _count_covers(ifs, child, False, depth_left - 1)
    return total + 1


def _enumerate_covers(ifs, trie_node, inside, word, depth_left):
    """Yield every antichain of cubes of depth <= max that covers E within this subtree."""
    if not _meets(trie_node, inside):
        yield ()
        return
    if depth_left == 0:
        yield (word,)
        return
    yield (word,)
    node_inside = inside or (None in trie_node if trie_node is not None else False)
    per_child = []
    for sym in range(ifs.num_maps):
        if node_inside:
            per_child.append(
                list(_enumerate_covers(ifs, None, True, word + (sym,), depth_left - 1))
            )
        else:
            child = trie_node.get(sym)
            if child is not None:
                per_child.append(
                    list(_enumerate_covers(ifs, child, False, word + (sym,), depth_left - 1))
                )
    for combo in itertools.product(*per_child):
        yield tuple(itertools.chain.from_iterable(combo))


def count_brute_force_covers(ifs: IteratedFunctionSystem, cells: CellSet, max_depth: int) -> int:
    if cells.is_empty():
        return 1
    return _count_covers(ifs, _build_trie(cells), False, max_depth)


def brute_force_content(
    ifs: IteratedFunctionSystem, cells: CellSet, rho: RhoLike, max_depth: int
) -> float:
    """Minimum of sum mu**rho over *every* enumerated antichain cover of the cells.

    Independent of the DP: it also tries covers that descend below cells of E,
    which the DP argues away.  Agrees with `hausdorff_content` exactly whenever
    max_depth >= the deepest cell.  Guarded: refuses more than 10**7 covers.
    """
    r = as_rho(rho)
    if cells.is_empty():
        return 0.0
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    trie = _build_trie(cells)
    n_covers = _count_covers(ifs, trie, False, max_depth)
    if n_covers > _BRUTE_FORCE_BUDGET:
        raise ResourceLimitError(
            f"{n_covers} antichain covers exceed the {_BRUTE_FORCE_BUDGET} enumeration budget"
        )
    best = math.inf
    for cover in _enumerate_covers(ifs, trie, False, (), max_depth):
        cost = cover_cost(ifs, cover, r)
        if cost < best:
            best = cost
    return best
