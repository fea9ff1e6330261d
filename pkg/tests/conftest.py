"""Shared fixtures and independent reference oracles.

The oracles here deliberately avoid the package's algorithms: the reference
maximal operator enumerates ancestors and integrates by direct leaf sums, and
the reference integrals recompute from definitions.  Tests compare frozen
expected values produced by these paths against the production code.
"""

import itertools
import math

import pytest

from fml.choquet import CylinderFunction
from fml.ifs import IteratedFunctionSystem, cube_measure


@pytest.fixture(scope="session")
def binary():
    return IteratedFunctionSystem.from_ratios((0.5, 0.5), name="binary")


@pytest.fixture(scope="session")
def biased_binary():
    return IteratedFunctionSystem.from_ratios((0.5, 0.5), (1 / 3, 2 / 3), name="biased-binary")


@pytest.fixture(scope="session")
def quaternary():
    return IteratedFunctionSystem.from_ratios((0.25,) * 4, name="quaternary")


@pytest.fixture(scope="session")
def biased_quaternary():
    return IteratedFunctionSystem.from_ratios(
        (1 / 3,) * 4, (0.1, 0.2, 0.3, 0.4), name="biased-quaternary"
    )


def reference_maximal(ifs: IteratedFunctionSystem, f: CylinderFunction) -> dict:
    """Per-leaf max of ancestor averages, each average a direct leaf sum."""
    m = ifs.num_maps
    n = f.depth
    out = {}
    for leaf in itertools.product(range(m), repeat=n):
        best = f.value_at(leaf)
        for k in range(n):
            prefix = leaf[:k]
            mu = cube_measure(ifs, prefix)
            total = math.fsum(
                cube_measure(ifs, prefix + tail) * f.value_at(prefix + tail)
                for tail in itertools.product(range(m), repeat=n - k)
            )
            if mu > 0:
                best = max(best, total / mu)
        out[leaf] = best
    return out


def leaf_values(ifs: IteratedFunctionSystem, f: CylinderFunction) -> dict:
    """Dense leaf -> value map, absent leaves filled with 0."""
    return {
        w: f.value_at(w)
        for w in itertools.product(range(ifs.num_maps), repeat=f.depth)
    }
