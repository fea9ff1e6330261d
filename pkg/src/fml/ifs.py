"""Self-similar sets as symbolic m-ary trees.

A system of m contracting similarities x -> r_i * R_i(x) + b_i with pairwise
disjoint images generates a compact invariant set whose points are addressed
by symbol strings.  Everything measure-theoretic in this package lives on that
symbol tree: a *word* (i1, ..., in) addresses the cube obtained by composing
the first n maps, its measure is the product p_{i1} * ... * p_{in} of the
probability weights, and the similarity dimension s solves

    sum_i r_i ** s == 1.

Geometry (translations, rotations) is consulted only when rendering the
n-generation picture of the attractor; the analysis modules never touch it.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ResourceLimitError

# A word is a tuple of symbols in range(m); the empty tuple is the root cube.
Word = tuple

ROOT: Word = ()

_GENERATION_BUDGET = 1_000_000  # max m**n images materialized at once


def parse_word(text: str) -> Word:
    """Parse a word written as a digit string; '-' (or '') denotes the root."""
    text = text.strip()
    if text in ("", "-"):
        return ROOT
    if not text.isdigit():
        raise ValueError(f"word must be a digit string, got {text!r}")
    return tuple(int(c) for c in text)


def format_word(word: Word) -> str:
    return "".join(str(s) for s in word) if word else "-"


def is_prefix(shorter: Word, longer: Word) -> bool:
    return len(shorter) <= len(longer) and longer[: len(shorter)] == shorter


def validate_word(word: Word, num_maps: int) -> None:
    for s in word:
        if not isinstance(s, int) or not 0 <= s < num_maps:
            raise ValueError(f"symbol {s!r} out of range for {num_maps} maps")


@dataclass(frozen=True)
class SimilarityMap:
    """One contraction x -> ratio * rotation @ x + translation.

    translation/rotation may be omitted for measure-only systems; rendering
    then refuses to run.  A supplied rotation must be orthogonal.
    """

    ratio: float
    translation: Optional[tuple] = None
    rotation: Optional[tuple] = None  # row tuples

    def __post_init__(self):
        if not 0.0 < self.ratio < 1.0:
            raise ValueError(f"contraction ratio must lie in (0,1), got {self.ratio}")
        if self.translation is not None:
            object.__setattr__(self, "translation", tuple(float(x) for x in self.translation))
        if self.rotation is not None:
            rows = tuple(tuple(float(x) for x in row) for row in self.rotation)
            object.__setattr__(self, "rotation", rows)
            mat = np.array(rows, dtype=float)
            if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
                raise ValueError("rotation must be a square matrix")
            if self.translation is not None and mat.shape[0] != len(self.translation):
                raise ValueError("rotation size must match translation dimension")
            defect = np.abs(mat.T @ mat - np.eye(mat.shape[0])).max()
            if defect > 1e-9:
                raise ValueError(f"rotation is not orthogonal (defect {defect:.3e})")


def solve_dimension(ratios: Sequence[float]) -> float:
    """Solve sum_i ratios[i] ** s == 1 for the unique positive root s.

    The map s -> sum r_i**s is strictly decreasing from m (at s=0+) to 0, so
    bisection is exact and derivative-free.  The bracket starts at (1e-9, 1]
    and is doubled upward until the sum drops below 1.
    """
    ratios = [float(r) for r in ratios]
    if len(ratios) < 2:
        raise ValueError("need at least two contraction ratios (no positive root for m=1)")
    for r in ratios:
        if not 0.0 < r < 1.0:
            raise ValueError(f"contraction ratio must lie in (0,1), got {r}")

    def excess(s: float) -> float:
        return math.fsum(r**s for r in ratios) - 1.0

    lo = 1e-9
    hi = 1.0
    for _ in range(64):
        if excess(hi) <= 0.0:
            break
        lo = hi
        hi *= 2.0
    else:  # pragma: no cover - sum r_i**s < 1 eventually since all r_i < 1
        raise ValueError("failed to bracket the dimension equation")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if excess(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)
    assert abs(excess(s)) <= 1e-12
    return s


@dataclass(frozen=True)
class IteratedFunctionSystem:
    """An IFS under the (declared) strong separation condition.

    Only ratios and probabilities feed the analysis layer: ratios determine
    the similarity dimension, probabilities the cube measures.  The
    separation condition is declared by the caller, not certified; see
    `check_separation` for the sufficient geometric test.
    """

    maps: tuple
    probabilities: tuple
    name: str = ""
    ssc_declared: bool = True
    dimension: float = field(init=False, repr=False)

    def __post_init__(self):
        maps = tuple(self.maps)
        probs = tuple(float(p) for p in self.probabilities)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "probabilities", probs)
        if len(maps) < 2:
            raise ValueError("an IFS needs at least two maps")
        if len(probs) != len(maps):
            raise ValueError("probability vector length must match the number of maps")
        if any(p < 0.0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(math.fsum(probs) - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1 within 1e-12")
        object.__setattr__(self, "dimension", solve_dimension(self.ratios))

    @property
    def num_maps(self) -> int:
        return len(self.maps)

    @property
    def ratios(self) -> tuple:
        return tuple(m.ratio for m in self.maps)

    @property
    def has_geometry(self) -> bool:
        return all(m.translation is not None for m in self.maps)

    @property
    def ambient_dim(self) -> int:
        if not self.has_geometry:
            raise ValueError("this IFS carries no geometry (translations absent)")
        return len(self.maps[0].translation)

    @classmethod
    def from_ratios(cls, ratios, probabilities=None, name="", ssc_declared=True):
        """Measure-only system: no translations, uniform weights by default."""
        ratios = tuple(float(r) for r in ratios)
        if probabilities is None:
            probabilities = (1.0 / len(ratios),) * len(ratios)
        maps = tuple(SimilarityMap(r) for r in ratios)
        return cls(maps=maps, probabilities=probabilities, name=name, ssc_declared=ssc_declared)


def cube_measure(ifs: IteratedFunctionSystem, word: Word) -> float:
    """Measure of the basic cube at `word`: the product of symbol weights."""
    validate_word(word, ifs.num_maps)
    mu = 1.0
    for s in word:
        mu *= ifs.probabilities[s]
    return mu


@dataclass(frozen=True)
class CellSet:
    """A canonical antichain of words: a finite union of disjoint basic cubes.

    No stored word is a prefix of another; ordering is by depth then symbols,
    so construction from any antichain is idempotent.
    """

    cells: tuple

    def __post_init__(self):
        cells = sorted(set(tuple(w) for w in self.cells), key=lambda w: (len(w), w))
        # antichain check: walk shallow-to-deep, remembering accepted words
        accepted = set()
        for w in cells:
            for k in range(len(w)):
                if w[:k] in accepted:
                    raise ValueError(
                        f"not an antichain: {format_word(w[:k])} is a prefix of {format_word(w)}"
                    )
            accepted.add(w)
        object.__setattr__(self, "cells", tuple(cells))

    def __iter__(self):
        return iter(self.cells)

    def __len__(self):
        return len(self.cells)

    def __contains__(self, word):
        return word in set(self.cells)

    @property
    def max_depth(self) -> int:
        return max((len(w) for w in self.cells), default=0)

    def is_empty(self) -> bool:
        return not self.cells

    def covers_word(self, word: Word) -> bool:
        """True iff the cube at `word` lies inside the union of cells."""
        cs = set(self.cells)
        return any(word[:k] in cs for k in range(len(word) + 1))

    def union(self, other: "CellSet") -> "CellSet":
        return disjointify(list(self.cells) + list(other.cells))

    def intersection(self, other: "CellSet") -> "CellSet":
        """Cellwise intersection: two cubes meet iff one contains the other."""
        out = []
        for a in self.cells:
            for b in other.cells:
                if is_prefix(a, b):
                    out.append(b)
                elif is_prefix(b, a):
                    out.append(a)
        return disjointify(out)


def disjointify(cubes: Iterable[Word], num_maps: Optional[int] = None) -> CellSet:
    """Reduce an arbitrary cube family to the maximal antichain with the same union.

    Whenever one word is a prefix of another, only the shorter (larger cube)
    survives; duplicates collapse.  This is the disjoint-cover reduction that
    makes antichain covers sufficient for content computation.
    """
    words = []
    for w in cubes:
        w = tuple(w)
        if num_maps is not None:
            validate_word(w, num_maps)
        elif any((not isinstance(s, int)) or s < 0 for s in w):
            raise ValueError(f"invalid symbols in word {w!r}")
        words.append(w)
    words.sort(key=lambda w: (len(w), w))
    accepted = set()
    out = []
    for w in words:
        if any(w[:k] in accepted for k in range(len(w) + 1)):
            continue
        accepted.add(w)
        out.append(w)
    return CellSet(tuple(out))


def all_words(num_maps: int, depth: int):
    """All words of exactly `depth` symbols, in lexicographic order."""
    return itertools.product(range(num_maps), repeat=depth)


def words_up_to(num_maps: int, depth: int):
    for d in range(depth + 1):
        yield from all_words(num_maps, d)


# ---------------------------------------------------------------------------
# geometry: n-generation rendering support
# ---------------------------------------------------------------------------


def _affine_parts(ifs: IteratedFunctionSystem):
    d = ifs.ambient_dim
    parts = []
    for m in ifs.maps:
        rot = np.array(m.rotation, dtype=float) if m.rotation is not None else np.eye(d)
        parts.append((m.ratio * rot, np.array(m.translation, dtype=float)))
    return parts


def _box_corners(box) -> np.ndarray:
    """Corners of an axis box, ordered for polygon rendering in 2D."""
    box = [(float(lo), float(hi)) for lo, hi in box]
    d = len(box)
    if d == 1:
        (lo, hi), = box
        return np.array([[lo], [hi]])
    if d == 2:
        (x0, x1), (y0, y1) = box
        return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
    return np.array(list(itertools.product(*((lo, hi) for lo, hi in box))))


def generation_geometry(ifs: IteratedFunctionSystem, n: int, seed_box):
    """Images of the seed box under every length-n composition of the maps.

    Returns [(word, corners)] for all m**n words, where `corners` is an array
    of the transformed box corners (2 points in 1D, 4 in polygon order in 2D).
    """
    if n < 0:
        raise ValueError("generation index must be nonnegative")
    if ifs.num_maps**n > _GENERATION_BUDGET:
        raise ResourceLimitError(
            f"generation {n} needs {ifs.num_maps**n} images, over the {_GENERATION_BUDGET} budget"
        )
    parts = _affine_parts(ifs)
    d = ifs.ambient_dim
    corners = _box_corners(seed_box)
    if corners.shape[1] != d:
        raise ValueError("seed box dimension does not match the maps")
    out = []

    def walk(word, mat, shift):
        if len(word) == n:
            out.append((word, (corners @ mat.T) + shift))
            return
        for sym, (a, b) in enumerate(parts):
            walk(word + (sym,), mat @ a, mat @ b + shift)

    walk(ROOT, np.eye(d), np.zeros(d))
    return out


def check_separation(ifs: IteratedFunctionSystem, seed_box=None) -> bool:
    """Sufficient separation test: first-generation bounding boxes pairwise disjoint.

    Certifying true disjointness of the attractor images is out of reach
    numerically; disjoint first-generation boxes (which hold for the standard
    Cantor/carpet examples) imply it.  An inconclusive result only warrants a
    warning because the separation condition is declared, not verified.
    """
    if not ifs.has_geometry:
        raise ValueError("separation check needs geometry (translations)")
    if seed_box is None:
        seed_box = [(0.0, 1.0)] * ifs.ambient_dim
    images = generation_geometry(ifs, 1, seed_box)
    boxes = []
    for _, pts in images:
        boxes.append((pts.min(axis=0), pts.max(axis=0)))
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            lo_i, hi_i = boxes[i]
            lo_j, hi_j = boxes[j]
            if not (np.any(hi_i < lo_j) or np.any(hi_j < lo_i)):
                return False
    return True


def warn_if_unseparated(ifs: IteratedFunctionSystem, seed_box=None) -> None:
    if ifs.has_geometry and not check_separation(ifs, seed_box):
        warnings.warn(
            f"IFS {ifs.name or '<unnamed>'}: first-generation boxes overlap; "
            "strong separation could not be certified (continuing on the declared flag)",
            stacklevel=2,
        )


# ---------------------------------------------------------------------------
# bundled example systems
# ---------------------------------------------------------------------------


def middle_third_cantor(probabilities=None, name="cantor3"):
    maps = (
        SimilarityMap(1 / 3, translation=(0.0,)),
        SimilarityMap(1 / 3, translation=(2 / 3,)),
    )
    return IteratedFunctionSystem(maps, probabilities or (0.5, 0.5), name=name)


def middle_fourth_cantor(probabilities=None, name="cantor4"):
    maps = (
        SimilarityMap(1 / 4, translation=(0.0,)),
        SimilarityMap(1 / 4, translation=(0.5,)),
    )
    return IteratedFunctionSystem(maps, probabilities or (0.5, 0.5), name=name)


def sierpinski_carpet(lam: float = 1 / 3, probabilities=None, name="carpet"):
    """Four corner copies of the unit square scaled by lam < 1/2."""
    if not 0.0 < lam < 0.5:
        raise ValueError("corner-square scale must lie in (0, 1/2)")
    shift = 1.0 - lam
    maps = (
        SimilarityMap(lam, translation=(0.0, 0.0)),
        SimilarityMap(lam, translation=(shift, 0.0)),
        SimilarityMap(lam, translation=(0.0, shift)),
        SimilarityMap(lam, translation=(shift, shift)),
    )
    return IteratedFunctionSystem(maps, probabilities or (0.25,) * 4, name=name)
