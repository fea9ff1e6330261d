"""Randomized verification campaigns for the maximal inequalities.

Each campaign draws adversarial cylinder functions, evaluates both sides of
one inequality with its explicit constant, and emits one record per checked
instance.  Records carry the derived per-trial seed, so any row can be
reproduced in isolation; a campaign re-run with the same master seed is
byte-identical.

Constants under test (rho = alpha/s, all logs natural):

    strong type, content level      2**(p+2) / (p - rho)        rho < p < 1
                                    2**(2p+1) / (p (1 - rho))   1 <= p
    strong type, measure level      2**(p+2) p / (p - 1)        1 < p
    weak type                       4 * rho**-rho * t**-rho
    indicator power bound           2p / (p - rho)
    integrability (Zygmund) bound   int Mf dmu <= 2 + 8 * int |f| log+|f| dmu

The converse integrability bound has no explicit constant; its campaign only
reports the empirical ratio sup and a cross-depth stability check, never a
comparison against a claimed value.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .choquet import (
    CylinderFunction,
    ess_sup_norm,
    llogl_functional,
    lp_choquet_norm,
    mu_integral,
    mu_power_integral,
    p_choquet_integral,
)
from .content import RhoLike, as_rho
from .ifs import IteratedFunctionSystem, Word, all_words, cube_measure, disjointify
from .maximal import maximal_operator, weak_type_profile

DISTRIBUTIONS = ("uniform", "dyadic-levels", "heavy-tail")

MARGIN_RTOL = 1e-9  # a margin below -MARGIN_RTOL * scale is a failed inequality


# ---------------------------------------------------------------------------
# explicit constants
# ---------------------------------------------------------------------------


def strong_type_constant(p: float, rho: RhoLike) -> float:
    """Content-level strong type (p,p) constant; valid for rho < 1, p > rho.

    The p >= 1 branch blows up as rho -> 1 while the measure-level constant
    stays finite; the two statements do not meet at the endpoint, so rho = 1
    is refused here and routed to the measure-level bound.
    """
    r = as_rho(rho)
    if r >= 1.0:
        raise ValueError(
            "the content-level strong type bound needs rho < 1 strictly; "
            "at rho = 1 the measure-level bound applies (verify_strong_pp)"
        )
    if p <= r:
        raise ValueError(f"strong type needs p > rho, got p={p}, rho={r}")
    if p < 1.0:
        return 2.0 ** (p + 2.0) / (p - r)
    return 2.0 ** (2.0 * p + 1.0) / (p * (1.0 - r))


def strong_pp_constant(p: float) -> float:
    """Measure-level strong type (p,p) constant, p > 1."""
    if p <= 1.0:
        raise ValueError(f"the measure-level strong type bound needs p > 1, got {p}")
    return 2.0 ** (p + 2.0) * p / (p - 1.0)


def weak_type_constant(rho: RhoLike) -> float:
    r = as_rho(rho)
    return 4.0 * r**-r


def indicator_power_bound_constant(p: float, rho: RhoLike) -> float:
    """Bound constant for int (M chi_cube)**p dH <= const * mu(cube)**rho."""
    r = as_rho(rho)
    if p <= r:
        raise ValueError(f"indicator power bound needs p > rho, got p={p}, rho={r}")
    return 2.0 * p / (p - r)


WIENER_MEASURE_TERM = 2.0
WIENER_LLOGL_FACTOR = 8.0


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationRecord:
    """One checked inequality instance; margin = rhs - lhs."""

    theorem_id: str
    ifs_name: str
    rho: Optional[float]
    p: Optional[float]
    seed: int
    lhs: float
    rhs: float
    constant_used: Optional[float]
    margin: float
    worst_ratio_so_far: float
    asserted: bool = True  # internal: False for report-only campaigns


CSV_COLUMNS = (
    "theorem_id",
    "ifs",
    "rho",
    "p",
    "seed",
    "lhs",
    "rhs",
    "constant",
    "margin",
    "worst_ratio",
)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_records_csv(records: Sequence[VerificationRecord], fh) -> None:
    """Write the ledger; deterministic byte-for-byte for a fixed record list."""
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for r in records:
        fh.write(
            ",".join(
                (
                    r.theorem_id,
                    r.ifs_name,
                    _fmt(r.rho),
                    _fmt(r.p),
                    str(r.seed),
                    _fmt(r.lhs),
                    _fmt(r.rhs),
                    _fmt(r.constant_used),
                    _fmt(r.margin),
                    _fmt(r.worst_ratio_so_far),
                )
            )
            + "\n"
        )


def margin_tolerance(record: VerificationRecord) -> float:
    return MARGIN_RTOL * max(1.0, abs(record.lhs), abs(record.rhs))


def failed_records(records: Sequence[VerificationRecord]):
    return [r for r in records if r.asserted and r.margin < -margin_tolerance(r)]


def worst_ratio(records: Sequence[VerificationRecord]) -> float:
    return max((r.worst_ratio_so_far for r in records), default=0.0)


def _ratio(lhs: float, rhs: float) -> float:
    if rhs > 0.0:
        return lhs / rhs
    return 0.0 if lhs == 0.0 else math.inf


def _assemble(theorem_id, ifs_name, rho, p, constant, rows, asserted=True):
    """rows: iterable of (seed, ordinal, lhs, rhs) -> sorted records with running ratio."""
    rows = sorted(rows, key=lambda t: (t[0], t[1]))
    records = []
    worst = 0.0
    for seed, _, lhs, rhs in rows:
        worst = max(worst, _ratio(lhs, rhs))
        records.append(
            VerificationRecord(
                theorem_id=theorem_id,
                ifs_name=ifs_name,
                rho=rho,
                p=p,
                seed=seed,
                lhs=lhs,
                rhs=rhs,
                constant_used=constant,
                margin=rhs - lhs,
                worst_ratio_so_far=worst,
                asserted=asserted,
            )
        )
    return records


# ---------------------------------------------------------------------------
# adversarial input generation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorConfig:
    """How trial functions are drawn.

    dyadic-levels emits exact powers of two, probing the proof's layer
    decomposition where the constants are tightest; heavy-tail emits
    exp(U[0,12]) to stress the L log L functionals.
    """

    depth: int = 6
    value_distribution: str = "dyadic-levels"
    sparsity: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.depth <= 10:
            raise ValueError("generator depth must lie in [0, 10]")
        if self.value_distribution not in DISTRIBUTIONS:
            raise ValueError(
                f"unknown value distribution {self.value_distribution!r}; "
                f"choose from {DISTRIBUTIONS}"
            )
        if not 0.0 < self.sparsity <= 1.0:
            raise ValueError("sparsity must lie in (0, 1]")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def trial_seeds(master_seed: int, trials: int):
    """Per-trial 64-bit seeds, split deterministically from the master seed."""
    state = np.random.SeedSequence(master_seed).generate_state(trials, dtype=np.uint64)
    return [int(x) for x in state]


def random_cylinder_function(
    ifs: IteratedFunctionSystem,
    depth: int,
    distribution: str,
    sparsity: float,
    rng: np.random.Generator,
) -> CylinderFunction:
    m = ifs.num_maps
    n_leaves = m**depth
    mask = rng.random(n_leaves) < sparsity
    if not mask.any():
        mask[int(rng.integers(n_leaves))] = True
    if distribution == "uniform":
        vals = rng.uniform(0.0, 8.0, n_leaves)
    elif distribution == "dyadic-levels":
        vals = 2.0 ** rng.integers(-8, 9, n_leaves).astype(float)
    elif distribution == "heavy-tail":
        vals = np.exp(rng.uniform(0.0, 12.0, n_leaves))
    else:
        raise ValueError(f"unknown value distribution {distribution!r}")
    values = {}
    for idx, w in enumerate(all_words(m, depth)):
        if mask[idx]:
            values[w] = float(vals[idx])
    return CylinderFunction(depth, values)


def sample_function(ifs: IteratedFunctionSystem, cfg: GeneratorConfig, seed: int):
    return random_cylinder_function(
        ifs, cfg.depth, cfg.value_distribution, cfg.sparsity, _rng(seed)
    )


def random_cell_set(
    ifs: IteratedFunctionSystem,
    max_depth: int,
    rng: np.random.Generator,
    stop_prob: Optional[float] = None,
    skip_prob: Optional[float] = None,
):
    """A random nonempty antichain of words of depth <= max_depth.

    The default descend probability keeps the branching process subcritical
    (m * descend < 1), so the antichains stay desk-sized on any arity.
    """
    m = ifs.num_maps
    if stop_prob is None or skip_prob is None:
        descend = 0.9 / m
        stop_prob = 0.55 * (1.0 - descend)
        skip_prob = 0.45 * (1.0 - descend)

    def gen(word):
        if len(word) == max_depth:
            return [word] if rng.random() < 0.5 else []
        u = rng.random()
        if u < stop_prob:
            return [word]
        if u < stop_prob + skip_prob:
            return []
        out = []
        for sym in range(m):
            out.extend(gen(word + (sym,)))
        return out

    while True:
        cells = gen(())
        if cells:
            return disjointify(cells, m)


def random_antichain_at_depths(
    ifs: IteratedFunctionSystem, max_depth: int, rng: np.random.Generator
):
    """Antichain for selection campaigns; mixes depths but stays nonempty."""
    return random_cell_set(ifs, max_depth, rng)


# ---------------------------------------------------------------------------
# worker-pool plumbing (FML_THREADS caps the pool; default is serial)
# ---------------------------------------------------------------------------


def _worker_count() -> int:
    raw = os.environ.get("FML_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"FML_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def _map_trials(worker, args):
    workers = _worker_count()
    if workers <= 1 or len(args) < 2 * workers:
        return [worker(a) for a in args]
    chunk = max(1, len(args) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, args, chunksize=chunk))


# ---------------------------------------------------------------------------
# campaign workers (top level so they pickle)
# ---------------------------------------------------------------------------


def _strong_type_trial(args):
    ifs, rho, p, depth, distribution, sparsity, seed = args
    f = random_cylinder_function(ifs, depth, distribution, sparsity, _rng(seed))
    mf = maximal_operator(ifs, f)
    lhs = p_choquet_integral(ifs, mf, p, rho)
    rhs_integral = p_choquet_integral(ifs, f, p, rho)
    return seed, lhs, rhs_integral


def _weak_type_trial(args):
    ifs, rho, n_thresholds, depth, distribution, sparsity, seed = args
    f = random_cylinder_function(ifs, depth, distribution, sparsity, _rng(seed))
    if f.is_zero():
        lo, hi = 0.5, 2.0  # arbitrary grid; both sides vanish
    else:
        lo = 0.5 * min(f.values.values())
        hi = 2.0 * f.max_value()
    thresholds = [float(t) for t in np.geomspace(lo, hi, n_thresholds)]
    return seed, weak_type_profile(ifs, f, rho, thresholds)


def _strong_pp_trial(args):
    ifs, p, depth, distribution, sparsity, seed = args
    f = random_cylinder_function(ifs, depth, distribution, sparsity, _rng(seed))
    mf = maximal_operator(ifs, f)
    lhs = mu_power_integral(ifs, mf, p)
    rhs_integral = mu_power_integral(ifs, f, p)
    return seed, lhs, rhs_integral


def _wiener_trial(args):
    ifs, depth, distribution, sparsity, seed = args
    f = random_cylinder_function(ifs, depth, distribution, sparsity, _rng(seed))
    mf = maximal_operator(ifs, f)
    lhs = mu_integral(ifs, mf)
    rhs = WIENER_MEASURE_TERM + WIENER_LLOGL_FACTOR * llogl_functional(ifs, f)
    return seed, lhs, rhs


def _stein_trial(args):
    ifs, depth, distribution, sparsity, seed = args
    f = random_cylinder_function(ifs, depth, distribution, sparsity, _rng(seed))
    mf = maximal_operator(ifs, f)
    return seed, llogl_functional(ifs, f), mu_integral(ifs, mf)


def _norm_equivalence_trial(args):
    ifs, rho, p, depth, distribution, sparsity, seed = args
    f = random_cylinder_function(ifs, depth, distribution, sparsity, _rng(seed))
    mf = maximal_operator(ifs, f)
    if p == math.inf:
        return seed, ess_sup_norm(f), ess_sup_norm(mf)
    return seed, lp_choquet_norm(ifs, f, p, rho), lp_choquet_norm(ifs, mf, p, rho)


def _domination_trial(args):
    ifs, depth, distribution, sparsity, seed = args
    f = random_cylinder_function(ifs, depth, distribution, sparsity, _rng(seed))
    mf = maximal_operator(ifs, f)
    deficit = max(v - mf.value_at(w) for w, v in f.values.items())
    return seed, deficit


# ---------------------------------------------------------------------------
# campaigns
# ---------------------------------------------------------------------------


def verify_strong_type(
    ifs: IteratedFunctionSystem,
    rho: RhoLike,
    p: float,
    trials: int,
    generator: GeneratorConfig = GeneratorConfig(),
):
    """Content-level strong type (p,p): int (Mf)**p dH <= C int f**p dH."""
    r = as_rho(rho)
    constant = strong_type_constant(p, r)
    seeds = trial_seeds(generator.seed, trials)
    args = [
        (ifs, r, p, generator.depth, generator.value_distribution, generator.sparsity, s)
        for s in seeds
    ]
    rows = [
        (seed, 0, lhs, constant * rhs_integral)
        for seed, lhs, rhs_integral in _map_trials(_strong_type_trial, args)
    ]
    return _assemble("strong_type_content", ifs.name or "ifs", r, p, constant, rows)


def verify_weak_type(
    ifs: IteratedFunctionSystem,
    rho: RhoLike,
    trials: int,
    generator: GeneratorConfig = GeneratorConfig(),
    n_thresholds: int = 20,
):
    """Weak type (rho,rho): H({Mf > t}) <= 4 rho**-rho t**-rho int f**rho dH."""
    r = as_rho(rho)
    constant = weak_type_constant(r)
    seeds = trial_seeds(generator.seed, trials)
    args = [
        (ifs, r, n_thresholds, generator.depth, generator.value_distribution,
         generator.sparsity, s)
        for s in seeds
    ]
    rows = []
    for seed, profile in _map_trials(_weak_type_trial, args):
        for ordinal, (t, lhs, bound) in enumerate(profile):
            rows.append((seed, ordinal, lhs, bound))
    return _assemble("weak_type_content", ifs.name or "ifs", r, None, constant, rows)


def verify_strong_pp(
    ifs: IteratedFunctionSystem,
    p: float,
    trials: int,
    generator: GeneratorConfig = GeneratorConfig(),
):
    """Measure-level strong type (p,p), p > 1: int (Mf)**p dmu <= C int f**p dmu."""
    constant = strong_pp_constant(p)
    seeds = trial_seeds(generator.seed, trials)
    args = [
        (ifs, p, generator.depth, generator.value_distribution, generator.sparsity, s)
        for s in seeds
    ]
    rows = [
        (seed, 0, lhs, constant * rhs_integral)
        for seed, lhs, rhs_integral in _map_trials(_strong_pp_trial, args)
    ]
    return _assemble("strong_type_measure", ifs.name or "ifs", None, p, constant, rows)


def verify_wiener(
    ifs: IteratedFunctionSystem,
    trials: int,
    generator: GeneratorConfig = GeneratorConfig(depth=8, value_distribution="heavy-tail"),
):
    """Integrability of Mf from the Zygmund class: int Mf dmu <= 2 + 8 int |f| log+|f| dmu."""
    seeds = trial_seeds(generator.seed, trials)
    args = [
        (ifs, generator.depth, generator.value_distribution, generator.sparsity, s)
        for s in seeds
    ]
    rows = [(seed, 0, lhs, rhs) for seed, lhs, rhs in _map_trials(_wiener_trial, args)]
    return _assemble(
        "wiener_llogl", ifs.name or "ifs", None, None, WIENER_LLOGL_FACTOR, rows
    )


def estimate_stein_constant(
    ifs: IteratedFunctionSystem, family: GeneratorConfig, trials: int
) -> float:
    """Empirical sup of int |f| log+|f| dmu / int Mf dmu over the family.

    The converse integrability theorem asserts some finite constant without
    naming it, so this reports and never asserts; zero functions are excluded.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    seeds = trial_seeds(family.seed, trials)
    args = [(ifs, family.depth, family.value_distribution, family.sparsity, s) for s in seeds]
    ratios = []
    for _, numerator, denominator in _map_trials(_stein_trial, args):
        if denominator > 0.0:
            ratios.append(numerator / denominator)
    if not ratios:
        raise ValueError("degenerate family: every trial function vanishes")
    return max(ratios)


def stein_depth_profile(
    ifs: IteratedFunctionSystem,
    trials: int,
    depths: Sequence[int] = (5, 6, 7, 8),
    generator: GeneratorConfig = GeneratorConfig(value_distribution="heavy-tail"),
):
    """Report-only ratio records per depth plus asserted cross-depth stability rows.

    Stability means the empirical sup at depth d+1 stays within twice the sup
    at depth d; that is the only checkable claim absent an explicit constant.
    """
    all_records = []
    sups = {}
    for depth in depths:
        cfg = replace(generator, depth=depth)
        seeds = trial_seeds(cfg.seed, trials)
        args = [(ifs, depth, cfg.value_distribution, cfg.sparsity, s) for s in seeds]
        rows = [
            (seed, 0, numerator, denominator)
            for seed, numerator, denominator in _map_trials(_stein_trial, args)
        ]
        records = _assemble(
            "stein_ratio", ifs.name or "ifs", None, None, None, rows, asserted=False
        )
        sups[depth] = worst_ratio(records)
        all_records.extend(records)
    stability_rows = []
    for ordinal, (d_prev, d_next) in enumerate(zip(depths, depths[1:])):
        stability_rows.append((generator.seed, ordinal, sups[d_next], 2.0 * sups[d_prev]))
    all_records.extend(
        _assemble(
            "stein_depth_stability", ifs.name or "ifs", None, None, 2.0, stability_rows
        )
    )
    return all_records, sups


def verify_norm_equivalence(
    ifs: IteratedFunctionSystem,
    rho: RhoLike,
    p: float,
    trials: int,
    generator: GeneratorConfig = GeneratorConfig(),
):
    """Quasi-norm equivalence ||f|| <= ||Mf|| <= C ||f|| in L^p of the content.

    The upper constant is the 1/p-th root of the matching strong-type
    constant (content level for rho < 1, measure level for rho = 1); at
    p = inf both norms are essential sups and the constant is 1.
    """
    r = as_rho(rho)
    if p <= r:
        raise ValueError(f"norm equivalence needs p > rho, got p={p}, rho={r}")
    if p == math.inf:
        upper_constant = 1.0
    elif r < 1.0:
        upper_constant = strong_type_constant(p, r) ** (1.0 / p)
    else:
        upper_constant = strong_pp_constant(p) ** (1.0 / p)
    seeds = trial_seeds(generator.seed, trials)
    args = [
        (ifs, r, p, generator.depth, generator.value_distribution, generator.sparsity, s)
        for s in seeds
    ]
    results = _map_trials(_norm_equivalence_trial, args)
    lower_rows = [(seed, 0, f_norm, mf_norm) for seed, f_norm, mf_norm in results]
    upper_rows = [
        (seed, 0, mf_norm, upper_constant * f_norm) for seed, f_norm, mf_norm in results
    ]
    name = ifs.name or "ifs"
    records = _assemble("norm_equiv_lower", name, r, p, 1.0, lower_rows)
    records += _assemble("norm_equiv_upper", name, r, p, upper_constant, upper_rows)
    return records


def verify_pointwise_domination(
    ifs: IteratedFunctionSystem,
    trials: int,
    generator: GeneratorConfig = GeneratorConfig(),
):
    """Mf >= f at every leaf, exactly (the leaf average *is* the leaf value)."""
    seeds = trial_seeds(generator.seed, trials)
    args = [
        (ifs, generator.depth, generator.value_distribution, generator.sparsity, s)
        for s in seeds
    ]
    rows = [
        (seed, 0, deficit, 0.0) for seed, deficit in _map_trials(_domination_trial, args)
    ]
    return _assemble("pointwise_domination", ifs.name or "ifs", None, None, None, rows)


def lebesgue_differentiation_experiment(
    ifs: IteratedFunctionSystem,
    f_fine: CylinderFunction,
    sample_leaves: Sequence[Word],
):
    """Ancestor-average deviations D_n(x) = avg over depth-n cube of |f - f(x)|.

    Returns [(leaf, (D_0, ..., D_N))].  D_N is exactly zero: the function is
    constant on its own leaf.  No decay rate is asserted; the table is the
    discrete shadow of the differentiation theorem.
    """
    n = f_fine.depth
    m = ifs.num_maps
    tables = []
    for leaf in sample_leaves:
        leaf = tuple(leaf)
        if len(leaf) != n:
            raise ValueError("sample leaves must have the function's depth")
        v = f_fine.value_at(leaf)
        deviations = []
        for k in range(n + 1):
            prefix = leaf[:k]
            mu_prefix = cube_measure(ifs, prefix)
            total = math.fsum(
                cube_measure(ifs, prefix + tail) * abs(f_fine.value_at(prefix + tail) - v)
                for tail in itertools.product(range(m), repeat=n - k)
            )
            deviations.append(total / mu_prefix if mu_prefix > 0.0 else 0.0)
        tables.append((leaf, tuple(deviations)))
    return tables


def lebesgue_records(
    ifs: IteratedFunctionSystem,
    trials: int,
    generator: GeneratorConfig = GeneratorConfig(),
    leaves_per_trial: int = 3,
):
    """Asserted records: the depth-N deviation of every sampled leaf is exactly 0."""
    depth = max(4, generator.depth)
    seeds = trial_seeds(generator.seed, trials)
    rows = []
    for seed in seeds:
        rng = _rng(seed)
        f = random_cylinder_function(
            ifs, depth, generator.value_distribution, generator.sparsity, rng
        )
        leaves = [
            tuple(int(x) for x in rng.integers(0, ifs.num_maps, depth))
            for _ in range(leaves_per_trial)
        ]
        for ordinal, (_, deviations) in enumerate(
            lebesgue_differentiation_experiment(ifs, f, leaves)
        ):
            rows.append((seed, ordinal, deviations[-1], 0.0))
    return _assemble("lebesgue_final_average", ifs.name or "ifs", None, None, None, rows)


# ---------------------------------------------------------------------------
# suite driver
# ---------------------------------------------------------------------------

SUITES = ("strong", "weak", "pp", "wiener", "stein", "equiv", "lebesgue")

STRONG_GRID = ((0.5, 0.25), (0.75, 0.5), (0.9, 0.75), (1.5, 0.25), (2.0, 0.5), (3.0, 0.75))
PP_GRID = (1.5, 2.0, 3.0)
WEAK_RHOS = (0.25, 0.5, 0.75, 1.0)
EQUIV_GRID = ((2.0, 0.5), (4.0, 0.25), (math.inf, 0.5), (2.0, 1.0), (math.inf, 1.0))


def run_suite(
    ifs: IteratedFunctionSystem,
    suite: str,
    trials: int,
    depth: int,
    seed: int,
    rho: Optional[float] = None,
    p: Optional[float] = None,
):
    """Run one named suite over its default parameter grid (optionally narrowed)."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    base = GeneratorConfig(depth=depth, seed=seed)
    records = []
    if suite == "strong":
        grid = [(pp, rr) for pp, rr in STRONG_GRID if rho in (None, rr) and p in (None, pp)]
        if not grid:
            raise ValueError("no strong-type grid point matches the requested rho/p")
        for pp, rr in grid:
            records += verify_strong_type(ifs, rr, pp, trials, base)
    elif suite == "weak":
        rhos = [rr for rr in WEAK_RHOS if rho in (None, rr)]
        if not rhos:
            raise ValueError("no weak-type grid point matches the requested rho")
        for rr in rhos:
            records += verify_weak_type(ifs, rr, trials, base)
    elif suite == "pp":
        ps = [pp for pp in PP_GRID if p in (None, pp)]
        if not ps:
            raise ValueError("no measure-level grid point matches the requested p")
        for pp in ps:
            records += verify_strong_pp(ifs, pp, trials, base)
    elif suite == "wiener":
        cfg = replace(base, value_distribution="heavy-tail")
        records += verify_wiener(ifs, trials, cfg)
    elif suite == "stein":
        lo = max(2, depth - 3)
        depths = tuple(range(lo, depth + 1))
        cfg = replace(base, value_distribution="heavy-tail")
        stein_records, _ = stein_depth_profile(ifs, trials, depths, cfg)
        records += stein_records
    elif suite == "equiv":
        grid = [(pp, rr) for pp, rr in EQUIV_GRID if rho in (None, rr) and p in (None, pp)]
        if not grid:
            raise ValueError("no norm-equivalence grid point matches the requested rho/p")
        for pp, rr in grid:
            records += verify_norm_equivalence(ifs, rr, pp, trials, base)
    elif suite == "lebesgue":
        records += verify_pointwise_domination(ifs, trials, base)
        records += lebesgue_records(ifs, max(1, trials // 10), base)
    return records
