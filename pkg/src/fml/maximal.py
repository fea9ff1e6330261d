"""The dyadic maximal operator on the symbol tree, evaluated exactly.

For a point x with address i1 i2 ..., the maximal function is the supremum of
the measure-averages of |f| over the nested cubes containing x, root included.
For a cylinder function of depth n the supremum is attained at depth <= n:
below its own leaf f is constant, so every deeper average equals the leaf
value.  One bottom-up pass accumulates subtree integrals and one root-to-leaf
sweep carries the running maximum, so the whole operator costs O(m**n).

At a leaf the depth-n "average" is the leaf value itself and is used verbatim
(never recomputed as (mu*v)/mu), which makes the pointwise domination
M f >= f exact in floating point, not merely up to rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .choquet import CylinderFunction, level_set, p_choquet_integral
from .content import RhoLike, as_rho, hausdorff_content
from .ifs import IteratedFunctionSystem, Word, cube_measure, validate_word


@dataclass(frozen=True)
class AncestorAverages:
    """The full average sequence of one leaf: entry k averages f over the
    depth-k ancestor; the final entry is f's value on the leaf itself."""

    word: Word
    averages: tuple


def _support_trie(f: CylinderFunction) -> dict:
    trie: dict = {}
    for w in f.values:
        node = trie
        for s in w:
            node = node.setdefault(s, {})
    return trie


def _subtree_integrals(ifs: IteratedFunctionSystem, f: CylinderFunction) -> dict:
    """Integral of f over every cube that meets its support, keyed by word.

    Built bottom-up with fsum at each node so a node's integral is the
    correctly rounded sum of its children's.
    """
    integrals: dict = {}

    def accumulate(node: dict, word: Word, mu: float) -> float:
        if len(word) == f.depth:
            total = mu * f.values[word]
        else:
            total = math.fsum(
                accumulate(child, word + (sym,), mu * ifs.probabilities[sym])
                for sym, child in node.items()
            )
        integrals[word] = total
        return total

    if f.values:
        accumulate(_support_trie(f), (), 1.0)
    return integrals


def maximal_operator(
    ifs: IteratedFunctionSystem,
    f: CylinderFunction,
    max_ancestor_depth: Optional[int] = None,
) -> CylinderFunction:
    """Mf at the same depth as f; optionally truncated to ancestors of depth <= k.

    The untruncated operator is the k = depth(f) case, which is already the
    full supremum for cylinder functions.  Off the support trie every deeper
    average vanishes, so the running maximum is final there and whole
    subtrees of leaves are filled in bulk.
    """
    n = f.depth
    k_max = n if max_ancestor_depth is None else min(max_ancestor_depth, n)
    if k_max < 0:
        raise ValueError("truncation depth must be nonnegative")
    integrals = _subtree_integrals(ifs, f)
    trie = _support_trie(f) if f.values else None
    out = {}
    m = ifs.num_maps
    include_leaf_values = k_max == n

    def sweep(node, word: Word, mu: float, best: float) -> None:
        depth = len(word)
        if node is None:
            # no support below: averages are 0 from here on and, with the
            # leaf value being 0 too, every leaf in this subtree gets `best`
            out.update(
                (word + tail, best) for tail in itertools.product(range(m), repeat=n - depth)
            )
            return
        if depth == n:
            value = best
            if include_leaf_values:
                own = f.values.get(word, 0.0)
                if own > value:
                    value = own
            out[word] = value
            return
        if depth <= k_max and mu > 0.0:
            # zero-weight cubes carry no mass and no well-defined average
            avg = integrals[word] / mu
            if avg > best:
                best = avg
        for sym in range(m):
            sweep(node.get(sym), word + (sym,), mu * ifs.probabilities[sym], best)

    sweep(trie, (), 1.0, 0.0)
    # zeros appear only for vanishing f or zero-weight branches; keep the map sparse
    return CylinderFunction._trusted(n, {w: v for w, v in out.items() if v != 0.0})


def indicator_maximal_closed_form(
    ifs: IteratedFunctionSystem, word: Word, target_depth: int
) -> CylinderFunction:
    """M of a basic-cube indicator, built directly from its ring structure.

    M(chi_{K_w}) equals 1 on K_w and, on the ring of points whose address
    agrees with w for exactly l < k symbols, equals the deepest useful
    average mu(K_w) / mu(K_{w|l}); with l = 0 that is mu(K_w) on the
    complement of K_{w|1}.  (The printed closed form adds the constant term
    everywhere, which would push values above 1 on K_w; the ring reading is
    the one consistent with M chi <= 1, and it is what the generic operator
    reproduces exactly.)
    """
    word = tuple(word)
    validate_word(word, ifs.num_maps)
    k = len(word)
    if target_depth < k:
        raise ValueError("target depth must reach the indicator cube")
    m = ifs.num_maps
    mu_w = cube_measure(ifs, word)
    out = {}
    # ring l: addresses agreeing with the cube for exactly l symbols
    for l in range(k):
        mu_prefix = cube_measure(ifs, word[:l])
        value = mu_w / mu_prefix if mu_prefix > 0.0 else 0.0
        for sym in range(m):
            if sym == word[l]:
                continue
            prefix = word[:l] + (sym,)
            out.update(
                (prefix + tail, value)
                for tail in itertools.product(range(m), repeat=target_depth - l - 1)
            )
    out.update(
        (word + tail, 1.0) for tail in itertools.product(range(m), repeat=target_depth - k)
    )
    return CylinderFunction._trusted(target_depth, {w: v for w, v in out.items() if v != 0.0})


def ancestor_average_trace(
    ifs: IteratedFunctionSystem, f: CylinderFunction, word: Word
) -> AncestorAverages:
    """Averages of f over the whole ancestor chain of a leaf.

    The final entry equals f(leaf) exactly: a cylinder function is constant
    on its own leaf, so no division is performed there.
    """
    word = tuple(word)
    validate_word(word, ifs.num_maps)
    if len(word) != f.depth:
        raise ValueError("trace leaf must have the function's depth")
    integrals = _subtree_integrals(ifs, f)
    averages = []
    mu = 1.0
    for k in range(len(word)):
        total = integrals.get(word[:k], 0.0)
        averages.append(total / mu if mu > 0.0 else 0.0)
        mu *= ifs.probabilities[word[k]]
    averages.append(f.values.get(word, 0.0))
    return AncestorAverages(word=word, averages=tuple(averages))


def weak_type_profile(
    ifs: IteratedFunctionSystem,
    f: CylinderFunction,
    rho: RhoLike,
    thresholds: Sequence[float],
):
    """For each t: (t, content of {Mf > t}, weak-type bound 4 rho**-rho t**-rho * int f**rho dH)."""
    r = as_rho(rho)
    for t in thresholds:
        if not t > 0.0:
            raise ValueError("weak-type thresholds must be positive")
    mf = maximal_operator(ifs, f)
    integral = p_choquet_integral(ifs, f, r, r)
    scale = 4.0 * r**-r
    rows = []
    for t in thresholds:
        lhs = hausdorff_content(ifs, level_set(mf, t), r)
        bound = scale * t**-r * integral
        rows.append((t, lhs, bound))
    return rows
