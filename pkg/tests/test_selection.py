import math

import numpy as np
import pytest

from fml.choquet import CylinderFunction, p_choquet_integral, restrict
from fml.content import cover_cost, hausdorff_content, measure_power
from fml.harness import _rng, random_antichain_at_depths, random_cylinder_function
from fml.ifs import CellSet, cube_measure, is_prefix
from fml.selection import (
    certify_selection,
    integral_split_constant,
    select_subfamily,
)

RHOS = (0.25, 0.5, 0.75, 1.0)


def reorder(cells, how, ifs, rng):
    words = list(cells)
    if how == "lex":
        words.sort()
    elif how == "measure":
        words.sort(key=lambda w: (-cube_measure(ifs, w), w))
    elif how == "random":
        rng.shuffle(words)
    return words


class TestGreedyHandTraces:
    def test_two_halves_both_selected(self, binary):
        result = select_subfamily(binary, [(0,), (1,)], 0.5)
        assert result.selected == ((0,), (1,))
        assert result.per_node_sums[()] == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_quarter_cells_at_small_rho(self, binary):
        cells = [(0, 0), (0, 1), (1, 0), (1, 1)]
        result = select_subfamily(binary, cells, 0.25)
        # third cube would push the root sum to 3 * 4**-0.25 > 2
        assert result.selected == ((0, 0), (0, 1))

    def test_single_cube_always_selected(self, biased_binary):
        result = select_subfamily(biased_binary, [(1, 0, 1)], 0.4)
        assert result.selected == ((1, 0, 1),)

    def test_rejects_non_antichain(self, binary):
        with pytest.raises(ValueError):
            select_subfamily(binary, [(0,), (0, 1)], 0.5)

    def test_rejects_duplicates(self, binary):
        with pytest.raises(ValueError):
            select_subfamily(binary, [(0,), (0,)], 0.5)

    def test_rejects_nonpositive_sigma(self, binary):
        with pytest.raises(ValueError):
            select_subfamily(binary, [(0,)], 0.5, sigma=0.0)

    def test_order_changes_selection(self, binary):
        cells = [(0, 0), (0, 1), (1, 0), (1, 1)]
        lex = select_subfamily(binary, cells, 0.25).selected
        rev = select_subfamily(binary, list(reversed(cells)), 0.25).selected
        assert set(lex) != set(rev)

    def test_per_node_sums_definition(self, binary):
        result = select_subfamily(binary, [(0, 0), (0, 1), (1, 0), (1, 1)], 0.25)
        weight = measure_power(0.25, 0.25)
        assert result.per_node_sums[(0,)] == pytest.approx(2 * weight, rel=1e-15)
        assert result.per_node_sums[(0, 0)] == pytest.approx(weight, rel=1e-15)
        assert result.per_node_sums[()] == pytest.approx(2 * weight, rel=1e-15)


class TestCertification:
    def test_four_cell_example_certificate(self, binary):
        from fml.content import brute_force_content
        from fml.ifs import CellSet

        result = select_subfamily(binary, [(0, 0), (0, 1), (1, 0), (1, 1)], 0.25)
        ones = CylinderFunction.constant(1.0, 2, 2)
        cert = certify_selection(binary, result, 0.25, ones)
        assert cert.packing_exact
        # full union is everything: its content is 1 at any rho (root cover),
        # confirmed by the exhaustive cover enumerator
        assert brute_force_content(binary, CellSet(result.input_cubes), 0.25, 2) == 1.0
        assert cert.covering_lhs == 1.0
        assert cert.covering_rhs == pytest.approx(2 * 2 * 4**-0.25, rel=1e-14)
        assert cert.covering_margin > 0
        assert cert.integral_margin >= -1e-12

    def test_zero_function_split_is_trivial(self, binary):
        result = select_subfamily(binary, [(0,), (1,)], 0.5)
        cert = certify_selection(binary, result, 0.5, CylinderFunction(1, {}))
        assert cert.integral_lhs == 0.0 and cert.integral_rhs == 0.0

    def test_single_cube_split_is_equality_up_to_constant(self, binary):
        result = select_subfamily(binary, [(0, 1)], 0.5)
        f = CylinderFunction(2, {(0, 1): 3.0, (1, 0): 5.0})
        cert = certify_selection(binary, result, 0.5, f)
        one_side = p_choquet_integral(binary, restrict(f, (0, 1)), 1.0, 0.5)
        assert cert.integral_lhs == one_side
        assert cert.integral_rhs == 2.0 * one_side

    def test_function_must_be_deep_enough(self, binary):
        result = select_subfamily(binary, [(0, 0)], 0.5)
        with pytest.raises(ValueError):
            certify_selection(binary, result, 0.5, CylinderFunction.constant(1.0, 1, 2))


class TestRandomCampaign:
    @pytest.mark.parametrize("order", ("input", "lex", "measure", "random"))
    def test_three_guarantees_hold(self, biased_binary, order):
        rng = _rng(hash(order) % 2**31)
        for _ in range(60):
            cells = random_antichain_at_depths(biased_binary, 4, rng)
            words = reorder(cells, order, biased_binary, rng)
            f = random_cylinder_function(biased_binary, 5, "uniform", 0.6, rng)
            for rho in RHOS:
                result = select_subfamily(biased_binary, words, rho)
                cert = certify_selection(biased_binary, result, rho, f)
                assert cert.packing_exact
                assert cert.packing_margin >= -1e-12
                assert cert.covering_margin >= -1e-12 * max(1.0, cert.covering_rhs)
                assert cert.integral_margin >= -1e-12 * max(1.0, cert.integral_rhs)

    @pytest.mark.parametrize("sigma", (0.5, 1.0, 2.0))
    def test_sigma_variants(self, binary, sigma):
        rng = _rng(int(sigma * 100))
        for _ in range(40):
            cells = random_antichain_at_depths(binary, 4, rng)
            f = random_cylinder_function(binary, 5, "dyadic-levels", 0.6, rng)
            result = select_subfamily(binary, list(cells), 0.5, sigma=sigma)
            cert = certify_selection(binary, result, 0.5, f)
            assert cert.covering_constant == 1.0 + 1.0 / sigma
            assert cert.integral_constant == integral_split_constant(sigma)
            assert cert.packing_exact
            assert cert.covering_margin >= -1e-12 * max(1.0, cert.covering_rhs)
            assert cert.integral_margin >= -1e-12 * max(1.0, cert.integral_rhs)

    def test_packing_reverified_from_scratch(self, biased_quaternary):
        rng = _rng(77)
        for _ in range(40):
            cells = random_antichain_at_depths(biased_quaternary, 3, rng)
            result = select_subfamily(biased_quaternary, list(cells), 0.5)
            budget = (1.0 + result.sigma)
            for node, stored in result.per_node_sums.items():
                recomputed = math.fsum(
                    measure_power(cube_measure(biased_quaternary, w), 0.5)
                    for w in result.selected
                    if is_prefix(node, w)
                )
                cap = budget * measure_power(cube_measure(biased_quaternary, node), 0.5)
                assert stored <= cap
                assert recomputed == pytest.approx(stored, rel=1e-12)

    def test_selected_mass_controls_union_content(self, binary):
        # the covering guarantee in isolation, against the DP content
        rng = _rng(101)
        for _ in range(60):
            cells = random_antichain_at_depths(binary, 5, rng)
            for rho in RHOS:
                result = select_subfamily(binary, list(cells), rho)
                union_content = hausdorff_content(binary, CellSet(result.input_cubes), rho)
                selected_mass = cover_cost(binary, result.selected, rho)
                assert union_content <= 2.0 * selected_mass + 1e-12
