"""Acceptance suite: every quantitative claim, at its stated tolerance.

One test per criterion, in order; each prints a PASS line on success so a
`pytest -s tests/test_acceptance.py` run reads as a checklist.  Expected
values come from independent oracles (exhaustive cover enumeration, naive
ancestor averages, direct leaf sums), never from the code paths under test.
"""

import itertools
import math
import time

import numpy as np
import pytest

from fml.choquet import CylinderFunction, choquet_integral, p_choquet_integral
from fml.content import brute_force_content, hausdorff_content, measure_power
from fml.harness import (
    GeneratorConfig,
    _rng,
    failed_records,
    indicator_power_bound_constant,
    lebesgue_differentiation_experiment,
    random_cell_set,
    random_cylinder_function,
    stein_depth_profile,
    trial_seeds,
    verify_pointwise_domination,
    verify_strong_pp,
    verify_strong_type,
    verify_weak_type,
    verify_wiener,
    worst_ratio,
)
from fml.ifs import CellSet, IteratedFunctionSystem, cube_measure, solve_dimension
from fml.maximal import (
    ancestor_average_trace,
    indicator_maximal_closed_form,
    maximal_operator,
)
from fml.selection import certify_selection, integral_split_constant, select_subfamily

from helpers import all_antichains, bounded_random_cell_set

BINARY = IteratedFunctionSystem.from_ratios((0.5, 0.5), name="binary")
BIASED_BINARY = IteratedFunctionSystem.from_ratios((0.5, 0.5), (1 / 3, 2 / 3), name="biased")
QUATERNARY = IteratedFunctionSystem.from_ratios((0.25,) * 4, name="quaternary")
BIASED_QUATERNARY = IteratedFunctionSystem.from_ratios(
    (1 / 3,) * 4, (0.1, 0.2, 0.3, 0.4), name="biased-quaternary"
)

RHOS = (0.25, 0.5, 0.75, 1.0)


def report(criterion: int, text: str) -> None:
    print(f"PASS criterion {criterion:2d}: {text}")


def test_criterion_01_dimension_closed_forms():
    cases = (
        ((1 / 3, 1 / 3), math.log(2) / math.log(3)),
        ((1 / 4, 1 / 4), 0.5),
        ((1 / 3,) * 4, 2 * math.log(2) / math.log(3)),
    )
    for ratios, expected in cases:
        assert abs(solve_dimension(ratios) - expected) <= 1e-10
    best = math.inf
    for _ in range(5):
        t0 = time.perf_counter()
        for ratios, _ in cases:
            solve_dimension(ratios)
        best = min(best, (time.perf_counter() - t0) / len(cases))
    assert best < 1e-3
    report(1, f"three closed-form dimensions within 1e-10, {best * 1e6:.0f} us per solve")


def test_criterion_02_content_oracle_equivalence():
    t0 = time.perf_counter()
    checked = 0
    for ifs in (BINARY, BIASED_BINARY):
        for cells in all_antichains(2, 3):
            cs = CellSet(cells)
            for rho in RHOS:
                dp = hausdorff_content(ifs, cs, rho)
                bf = brute_force_content(ifs, cs, rho, 3)
                assert dp == bf, (ifs.name, cells, rho, dp, bf)
                checked += 1
    exhaustive = checked
    rng = np.random.default_rng(20_2)
    for _ in range(1000):
        cells = bounded_random_cell_set(QUATERNARY, 4, rng)
        depth = cells.max_depth
        for rho in RHOS:
            dp = hausdorff_content(QUATERNARY, cells, rho)
            bf = brute_force_content(QUATERNARY, cells, rho, depth)
            assert dp == bf, (cells.cells, rho, dp, bf)
            checked += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    report(
        2,
        f"DP == brute force exactly on {exhaustive} exhaustive binary and "
        f"{checked - exhaustive} random quaternary instances in {elapsed:.1f}s",
    )


def test_criterion_03_content_at_dimension_is_measure():
    rng = np.random.default_rng(303)
    for _ in range(1000):
        ifs = BIASED_QUATERNARY if rng.random() < 0.5 else BIASED_BINARY
        cells = random_cell_set(ifs, 4, rng)
        mass = math.fsum(cube_measure(ifs, w) for w in cells)
        assert abs(hausdorff_content(ifs, cells, 1.0) - mass) <= 1e-12
    report(3, "content at rho=1 equals summed cell measure within 1e-12 on 1000 sets")


def test_criterion_04_strong_subadditivity_and_sublinearity():
    rng = np.random.default_rng(404)
    rho_grid = [round(0.1 * k, 1) for k in range(1, 11)]
    for _ in range(1000):
        e1 = random_cell_set(BIASED_BINARY, 4, rng)
        e2 = random_cell_set(BIASED_BINARY, 4, rng)
        union = e1.union(e2)
        inter = e1.intersection(e2)
        for rho in rho_grid:
            lhs = hausdorff_content(BIASED_BINARY, union, rho) + hausdorff_content(
                BIASED_BINARY, inter, rho
            )
            rhs = hausdorff_content(BIASED_BINARY, e1, rho) + hausdorff_content(
                BIASED_BINARY, e2, rho
            )
            assert lhs <= rhs + 1e-12
    gen_rng = _rng(405)
    for i in range(1000):
        f = random_cylinder_function(BIASED_BINARY, 4, "uniform", 0.5, gen_rng)
        g = random_cylinder_function(BIASED_BINARY, 4, "dyadic-levels", 0.5, gen_rng)
        rho = RHOS[i % 4]
        lhs = choquet_integral(BIASED_BINARY, f + g, rho)
        rhs = choquet_integral(BIASED_BINARY, f, rho) + choquet_integral(BIASED_BINARY, g, rho)
        assert lhs <= rhs + 1e-12
    report(4, "strong subadditivity and integral sublinearity: 1000 pairs each, 0 violations")


def test_criterion_05_indicator_closed_form_equals_operator():
    t0 = time.perf_counter()
    words = 0
    for ifs, max_depth in ((BINARY, 6), (QUATERNARY, 6)):
        m = ifs.num_maps
        for k in range(max_depth + 1):
            for w in itertools.product(range(m), repeat=k):
                direct = maximal_operator(ifs, CylinderFunction.indicator(w))
                closed = indicator_maximal_closed_form(ifs, w, k)
                assert direct.values == closed.values, (ifs.name, w)
                words += 1
    report(
        5,
        f"ring closed form == generic operator exactly on {words} words "
        f"(depth <= 6, binary & quaternary) in {time.perf_counter() - t0:.1f}s",
    )


def test_criterion_06_indicator_power_bound():
    grid = [(rho, p) for rho in (0.25, 0.5, 0.75) for p in (rho + 0.1, 0.9, 1.0, 2.0)]
    assert len(grid) >= 12
    checked = 0
    for ifs, max_depth in ((BINARY, 5), (BIASED_BINARY, 5), (QUATERNARY, 3)):
        m = ifs.num_maps
        for k in range(max_depth + 1):
            for w in itertools.product(range(m), repeat=k):
                mchi = indicator_maximal_closed_form(ifs, w, k)
                mu = cube_measure(ifs, w)
                for rho, p in grid:
                    lhs = p_choquet_integral(ifs, mchi, p, rho)
                    rhs = indicator_power_bound_constant(p, rho) * measure_power(mu, rho)
                    assert lhs <= rhs + 1e-12 * max(1.0, rhs), (ifs.name, w, rho, p)
                    checked += 1
    report(6, f"indicator power bound 2p/(p-rho): {checked} (word, p, rho) cases, 0 violations")


def test_criterion_07_weak_type_campaign():
    records = []
    for rho in RHOS:
        cfg = GeneratorConfig(depth=6, value_distribution="dyadic-levels", sparsity=0.5, seed=7)
        records += verify_weak_type(BINARY, rho, 500, cfg, n_thresholds=20)
    failures = failed_records(records)
    assert not failures
    assert len(records) == 4 * 500 * 20
    report(
        7,
        f"weak type 4 rho**-rho: {len(records)} threshold checks, 0 violations, "
        f"worst ratio {worst_ratio(records):.4f}",
    )


def test_criterion_08_strong_type_campaigns():
    worst = 0.0
    total = 0
    for p, rho in ((0.5, 0.25), (0.75, 0.5), (0.9, 0.75), (1.5, 0.25), (2.0, 0.5), (3.0, 0.75)):
        cfg = GeneratorConfig(depth=6, value_distribution="dyadic-levels", sparsity=0.5, seed=8)
        records = verify_strong_type(BINARY, rho, p, 500, cfg)
        assert not failed_records(records), (p, rho)
        worst = max(worst, worst_ratio(records))
        total += len(records)
    for p in (1.5, 2.0, 3.0):
        cfg = GeneratorConfig(depth=6, value_distribution="dyadic-levels", sparsity=0.5, seed=88)
        records = verify_strong_pp(BIASED_BINARY, p, 500, cfg)
        assert not failed_records(records), p
        worst = max(worst, worst_ratio(records))
        total += len(records)
    report(
        8,
        f"strong type constants (both branches + measure level): {total} trials, "
        f"0 violations, worst ratio {worst:.4f}",
    )


def test_criterion_09_wiener_campaign():
    cfg = GeneratorConfig(depth=8, value_distribution="heavy-tail", sparsity=0.5, seed=9)
    records = verify_wiener(BINARY, 1000, cfg)
    assert not failed_records(records)
    assert len(records) == 1000
    report(
        9,
        f"integrability bound 2 + 8*LlogL: 1000 heavy-tail trials at depth 8, "
        f"0 violations, worst ratio {worst_ratio(records):.4f}",
    )


def test_criterion_10_converse_ratio_stability():
    cfg = GeneratorConfig(value_distribution="heavy-tail", sparsity=0.5, seed=10)
    records, sups = stein_depth_profile(BINARY, 400, depths=(5, 6, 7, 8), generator=cfg)
    assert not failed_records(records)
    assert all(math.isfinite(s) and s > 0 for s in sups.values())
    for d in (5, 6, 7):
        assert sups[d + 1] <= 2.0 * sups[d]
    profile = ", ".join(f"d{d}={sups[d]:.3f}" for d in sorted(sups))
    report(10, f"converse-bound empirical sup finite and depth-stable ({profile})")


def test_criterion_11_selection_guarantees():
    rng = _rng(1111)
    for i in range(500):
        cells = random_cell_set(BIASED_BINARY, 4, rng)
        f = random_cylinder_function(BIASED_BINARY, 4, "uniform", 0.6, rng)
        rho = RHOS[i % 4]
        orders = {
            "input": list(cells),
            "lex": sorted(cells),
            "measure": sorted(cells, key=lambda w: (-cube_measure(BIASED_BINARY, w), w)),
        }
        for words in orders.values():
            result = select_subfamily(BIASED_BINARY, words, rho)
            cert = certify_selection(BIASED_BINARY, result, rho, f)
            assert cert.packing_exact
            assert cert.covering_margin >= -1e-12 * max(1.0, cert.covering_rhs)
            assert cert.integral_margin >= -1e-12 * max(1.0, cert.integral_rhs)
    for sigma in (0.5, 1.0, 2.0):
        for i in range(150):
            cells = random_cell_set(BINARY, 4, rng)
            f = random_cylinder_function(BINARY, 4, "dyadic-levels", 0.6, rng)
            result = select_subfamily(BINARY, list(cells), 0.5, sigma=sigma)
            cert = certify_selection(BINARY, result, 0.5, f)
            assert cert.integral_constant == integral_split_constant(sigma)
            assert cert.packing_exact
            assert cert.covering_margin >= -1e-12 * max(1.0, cert.covering_rhs)
            assert cert.integral_margin >= -1e-12 * max(1.0, cert.integral_rhs)
    report(
        11,
        "selection packing exact, covering & splitting within 1e-12 over 500 pairs x 3 "
        "orders, sigma variants {0.5, 1, 2} clean",
    )


def test_criterion_12_domination_and_trace():
    cfg = GeneratorConfig(depth=6, value_distribution="heavy-tail", sparsity=0.5, seed=12)
    records = verify_pointwise_domination(BIASED_BINARY, 500, cfg)
    assert not failed_records(records)
    assert all(r.lhs <= 0.0 for r in records)
    rng = _rng(121)
    for _ in range(500):
        f = random_cylinder_function(BIASED_BINARY, 5, "uniform", 0.5, rng)
        leaf = tuple(int(x) for x in rng.integers(0, 2, 5))
        trace = ancestor_average_trace(BIASED_BINARY, f, leaf)
        assert trace.averages[-1] == f.value_at(leaf)
    tables = lebesgue_differentiation_experiment(
        BIASED_BINARY,
        random_cylinder_function(BIASED_BINARY, 5, "uniform", 0.5, _rng(122)),
        [tuple(int(x) for x in _rng(123).integers(0, 2, 5)) for _ in range(5)],
    )
    assert all(devs[-1] == 0.0 for _, devs in tables)
    report(12, "Mf >= f on every leaf; ancestor traces end exactly at f(leaf)")


def test_criterion_13_csv_determinism(tmp_path):
    from fml.cli import main

    config = tmp_path / "binary.json"
    config.write_text('{"ratios": [0.25, 0.25], "probabilities": [0.5, 0.5], "name": "b"}')
    outputs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        code = main(
            [
                "verify",
                str(config),
                "--suite",
                "all",
                "--trials",
                "8",
                "--depth",
                "5",
                "--seed",
                "99",
                "--csv",
                str(path),
            ]
        )
        assert code == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) > 100
    report(13, "re-running every suite with a fixed seed reproduces the CSV byte-for-byte")
