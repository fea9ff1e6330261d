"""Cylinder functions and their integrals.

A cylinder function of depth n is constant on every depth-n cell, stored as a
sparse leaf -> value map (absent leaves are 0, values are nonnegative).  These
are the computational model of simple functions on the attractor: every
integral below reduces to a finite sum or a finite level-set decomposition.

The p-integral against the content H is evaluated in closed form.  With the
distinct values 0 = v_0 < v_1 < ... < v_M of f, the layer function
t -> H({f > t}) is constant on each [v_{k-1}, v_k) where it equals
H({f >= v_k}), hence

    p * integral t**(p-1) H({f > t}) dt
        = sum_k H({f >= v_k}) * (v_k**p - v_{k-1}**p).

The level set in the closed form is the *non-strict* one; using {f > v_k}
here is the classic distribution-function off-by-one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Optional

from .content import RhoLike, as_rho, hausdorff_content
from .ifs import CellSet, IteratedFunctionSystem, Word, cube_measure, disjointify, is_prefix


@dataclass(frozen=True)
class CylinderFunction:
    """Nonnegative function constant on depth-n cells (sparse leaf -> value map)."""

    depth: int
    values: Mapping

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        clean = {}
        for w, v in self.values.items():
            w = tuple(w)
            v = float(v)
            if len(w) != self.depth:
                raise ValueError(f"leaf {w!r} has length {len(w)}, expected {self.depth}")
            if any((not isinstance(s, int)) or s < 0 for s in w):
                raise ValueError(f"invalid symbols in leaf {w!r}")
            if v < 0.0:
                raise ValueError(f"negative value {v} at leaf {w!r}")
            if math.isinf(v) or math.isnan(v):
                raise ValueError("values must be finite")
            if v > 0.0:
                clean[w] = v
        object.__setattr__(self, "values", clean)

    @classmethod
    def _trusted(cls, depth: int, values: dict) -> "CylinderFunction":
        """Bypass validation for internally built maps (canonical, no zeros)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "depth", depth)
        object.__setattr__(obj, "values", values)
        return obj

    @classmethod
    def constant(cls, value: float, depth: int = 0, num_maps: Optional[int] = None):
        if depth == 0:
            return cls(0, {(): value} if value > 0 else {})
        if num_maps is None:
            raise ValueError("constant at positive depth needs num_maps")
        return cls(depth, {w: value for w in itertools.product(range(num_maps), repeat=depth)})

    @classmethod
    def indicator(cls, word: Word):
        return cls(len(word), {tuple(word): 1.0})

    def value_at(self, leaf: Word) -> float:
        return self.values.get(tuple(leaf), 0.0)

    def max_value(self) -> float:
        return max(self.values.values(), default=0.0)

    def is_zero(self) -> bool:
        return not self.values

    def distinct_values(self):
        return sorted(set(self.values.values()))

    def support(self) -> CellSet:
        return CellSet(tuple(self.values))

    def scaled(self, c: float) -> "CylinderFunction":
        if c < 0.0:
            raise ValueError("scale factor must be nonnegative")
        return CylinderFunction(self.depth, {w: c * v for w, v in self.values.items()})

    __rmul__ = scaled

    def clipped(self, ceiling: float) -> "CylinderFunction":
        """Pointwise min(f, ceiling); the staircase used for monotone limits."""
        return CylinderFunction(self.depth, {w: min(v, ceiling) for w, v in self.values.items()})

    def __add__(self, other: "CylinderFunction") -> "CylinderFunction":
        if other.depth != self.depth:
            raise ValueError("cylinder functions must share a depth (refine first)")
        out = dict(self.values)
        for w, v in other.values.items():
            out[w] = out.get(w, 0.0) + v
        return CylinderFunction(self.depth, out)

    def refined(self, depth: int, num_maps: int) -> "CylinderFunction":
        """Same function expressed on the finer depth-`depth` cells."""
        if depth < self.depth:
            raise ValueError("can only refine to a greater depth")
        extra = depth - self.depth
        out = {}
        for w, v in self.values.items():
            for tail in itertools.product(range(num_maps), repeat=extra):
                out[w + tail] = v
        return CylinderFunction(depth, out)


def restrict(f: CylinderFunction, word: Word) -> CylinderFunction:
    """f multiplied by the indicator of the cube at `word`."""
    word = tuple(word)
    if len(word) > f.depth:
        raise ValueError("restriction cube must not be deeper than the function")
    return CylinderFunction(f.depth, {w: v for w, v in f.values.items() if is_prefix(word, w)})


def restrict_to_union(f: CylinderFunction, cubes) -> CylinderFunction:
    cubes = [tuple(w) for w in cubes]
    return CylinderFunction(
        f.depth,
        {w: v for w, v in f.values.items() if any(is_prefix(c, w) for c in cubes)},
    )


def level_set(f: CylinderFunction, threshold: float) -> CellSet:
    """Cells where f exceeds the threshold strictly, as a maximal antichain."""
    if threshold < 0.0:
        raise ValueError("threshold must be nonnegative (absent leaves carry value 0)")
    return disjointify(w for w, v in f.values.items() if v > threshold)


def _upper_set(f: CylinderFunction, value: float) -> CellSet:
    return disjointify(w for w, v in f.values.items() if v >= value)


def mu_integral(ifs: IteratedFunctionSystem, f: CylinderFunction) -> float:
    """Plain integral against the self-similar measure: sum mu(leaf) * value."""
    return math.fsum(cube_measure(ifs, w) * v for w, v in f.values.items())


def mu_power_integral(ifs: IteratedFunctionSystem, f: CylinderFunction, p: float) -> float:
    return math.fsum(cube_measure(ifs, w) * v**p for w, v in f.values.items())


def p_choquet_integral(
    ifs: IteratedFunctionSystem, f: CylinderFunction, p: float, rho: RhoLike
) -> float:
    """The p-integral of f against the content, by the exact layer formula."""
    if not p > 0.0:
        raise ValueError(f"integrability exponent must be positive, got {p}")
    r = as_rho(rho)
    terms = []
    previous = 0.0
    for v in f.distinct_values():
        h = hausdorff_content(ifs, _upper_set(f, v), r)
        terms.append(h * (v**p - previous**p))
        previous = v
    return math.fsum(terms)


def choquet_integral(ifs: IteratedFunctionSystem, f: CylinderFunction, rho: RhoLike) -> float:
    return p_choquet_integral(ifs, f, 1.0, rho)


def llogl_functional(ifs: IteratedFunctionSystem, f: CylinderFunction) -> float:
    """sum mu(leaf) * v * log+(v), the Zygmund-class size of f (natural log)."""
    return math.fsum(
        cube_measure(ifs, w) * v * max(0.0, math.log(v)) for w, v in f.values.items()
    )


def ess_sup_norm(f: CylinderFunction) -> float:
    """Essential sup against the content: the max leaf value.

    With strictly positive symbol weights every nonempty cell union has
    strictly positive content, so among cell sets only the empty set is
    content-null and the infimum over null exceptional sets collapses to a
    plain maximum.  (Zero-weight branches would make some cells null; the
    norm deliberately keeps the simple max contract regardless.)
    """
    return f.max_value()


def lp_choquet_norm(
    ifs: IteratedFunctionSystem, f: CylinderFunction, p: float, rho: RhoLike
) -> float:
    if p == math.inf:
        return ess_sup_norm(f)
    return p_choquet_integral(ifs, f, p, rho) ** (1.0 / p)
