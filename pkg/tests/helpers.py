"""Test-side generators shared between module tests and the acceptance suite."""

from fml.content import count_brute_force_covers
from fml.harness import random_cell_set
from fml.ifs import CellSet


def all_antichains(num_maps: int, max_depth: int):
    """Every antichain (as a word tuple) in the m-ary tree of depth <= max_depth.

    Recursively: an antichain either takes the root, or combines independent
    antichains in each child subtree (including empty ones).
    """

    def below(prefix, depth_left):
        if depth_left == 0:
            return [(), (prefix,)]
        combos = [[]]
        for sym in range(num_maps):
            child = below(prefix + (sym,), depth_left - 1)
            combos = [acc + list(c) for acc in combos for c in child]
        return [(prefix,)] + [tuple(c) for c in combos]

    return [tuple(a) for a in below((), max_depth)]


def bounded_random_cell_set(ifs, max_depth, rng, cover_budget=20_000, max_tries=200):
    """Random cell set whose brute-force cover count fits the testing budget.

    The count is taken at the set's own max cell depth, the canonical depth
    for an exact oracle comparison.
    """
    for _ in range(max_tries):
        cells = random_cell_set(ifs, max_depth, rng)
        if count_brute_force_covers(ifs, cells, cells.max_depth) <= cover_budget:
            return cells
    raise RuntimeError("could not draw a cell set within the enumeration budget")


def random_subset_cells(cells: CellSet, rng) -> CellSet:
    """A sub-union of a cell set (cellwise subset; possibly refined one level)."""
    kept = [w for w in cells if rng.random() < 0.7]
    if not kept and len(cells):
        kept = [cells.cells[0]]
    return CellSet(tuple(kept))
