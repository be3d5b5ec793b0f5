from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from lap_perturb.almost_regular import (
    ContourError,
    almost_regular,
    almost_regular_euler,
    almost_regular_series,
    chc_bound,
    chc_bound_half,
    chc_build,
    chc_table_to_csv,
    cm_closed_form,
    cm_recursion,
    complete_graph_chc,
    contour_eigenvalue,
)
from lap_perturb.domain import to_mpf
from lap_perturb.eigen import symmetric_eigen
from lap_perturb.graph import (
    build_graph,
    closed_walk_counts,
    complete_graph,
    perturbed_matrix,
    ring_with_core,
)
from lap_perturb.perturb import coefficients

# Closed forms for c_2..c_10 of a one-high-degree-node graph in terms of the
# closed-walk counts w[m] = (A^m)_11 and the gap x; frozen golden vectors.
GOLDEN_CM = {
    2: lambda w, x: Fraction(w[2]) / x,
    3: lambda w, x: Fraction(w[3]) / x**2,
    4: lambda w, x: Fraction(w[4] - 2 * w[2] ** 2) / x**3,
    5: lambda w, x: Fraction(w[5] - 5 * w[2] * w[3]) / x**4,
    6: lambda w, x: Fraction(w[6] - 6 * w[2] * w[4] - 3 * w[3] ** 2 + 7 * w[2] ** 3) / x**5,
    7: lambda w, x: Fraction(
        w[7] - 7 * w[5] * w[2] - 7 * w[4] * w[3] + 28 * w[3] * w[2] ** 2) / x**6,
    8: lambda w, x: Fraction(
        w[8] - 8 * w[6] * w[2] - 8 * w[5] * w[3] - 4 * w[4] ** 2
        + 36 * w[4] * w[2] ** 2 + 36 * w[3] ** 2 * w[2] - 30 * w[2] ** 4) / x**7,
    9: lambda w, x: Fraction(
        w[9] - 9 * w[7] * w[2] - 9 * w[6] * w[3] - 9 * w[5] * w[4]
        + 45 * w[5] * w[2] ** 2 + 90 * w[4] * w[2] * w[3] + 15 * w[3] ** 3
        - 165 * w[3] * w[2] ** 3) / x**8,
    10: lambda w, x: Fraction(
        w[10] - 10 * w[8] * w[2] - 10 * w[7] * w[3] - 10 * w[6] * w[4]
        - 5 * w[5] ** 2 + 55 * w[6] * w[2] ** 2 + 110 * w[5] * w[2] * w[3]
        + 55 * w[4] ** 2 * w[2] + 55 * w[4] * w[3] ** 2 - 220 * w[4] * w[2] ** 3
        - 330 * w[3] ** 2 * w[2] ** 2 + 143 * w[2] ** 5) / x**9,
}


def star(n: int):
    return build_graph(n, [(1, j) for j in range(2, n + 1)])


class TestAlmostRegularClassifier:
    def test_ring_with_core(self):
        arg = almost_regular(ring_with_core(8, 1))
        assert (arg.special, arg.r, arg.x) == (1, 3, 4)

    def test_star(self):
        arg = almost_regular(star(6))
        assert (arg.r, arg.x) == (1, 4)

    def test_regular_graph_rejected(self):
        with pytest.raises(ValueError, match="strictly largest"):
            almost_regular(complete_graph(5))

    def test_uneven_rest_rejected(self, e1):
        with pytest.raises(ValueError, match="common degree"):
            almost_regular(e1)


class TestChcTable:
    def test_first_row_is_walk_counts(self):
        g = ring_with_core(8, 1)
        walks = closed_walk_counts(g, 1, 8)
        chc = chc_build(walks, 8)
        for m in range(1, 9):
            assert chc.value(1, m) == walks.counts[m]

    def test_a22_splits_into_degree_square(self):
        for g in (ring_with_core(8, 1), complete_graph(6), star(7)):
            chc = chc_build(closed_walk_counts(g, 1, 6), 6)
            assert chc.value(2, 4) == chc.value(1, 2) ** 2

    def test_vanishes_above_half_order(self):
        for g in (ring_with_core(9, 2), complete_graph(5)):
            chc = chc_build(closed_walk_counts(g, 1, 10), 10)
            for m in range(1, 11):
                for k in range(m // 2 + 1, m + 1):
                    assert chc.value(k, m) == 0

    def test_complete_graph_closed_form(self):
        for n in range(3, 13):
            chc = chc_build(closed_walk_counts(complete_graph(n), 1, 10), 10)
            for m in range(2, 11):
                for k in range(1, m + 1):
                    assert chc.value(k, m) == complete_graph_chc(n, k, m), (n, k, m)

    def test_complete_graph_first_row_alternating_sum(self):
        for n in (4, 7, 11):
            d_max = n - 1
            chc = chc_build(closed_walk_counts(complete_graph(n), 1, 9), 9)
            for m in range(2, 10):
                expected = sum((-1) ** (m - 1 - j) * d_max**j for j in range(1, m))
                assert chc.value(1, m) == expected

    def test_csv_export(self):
        chc = chc_build(closed_walk_counts(complete_graph(4), 1, 3), 3)
        lines = chc_table_to_csv(chc).splitlines()
        assert lines[0] == "k,m,value"
        assert f"1,2,{3}" in lines


class TestCmClosedForm:
    def test_m2_is_degree_over_gap(self):
        g = ring_with_core(10, 2)
        arg = almost_regular(g)
        chc = chc_build(closed_walk_counts(g, 1, 4), 4)
        assert cm_closed_form(arg, chc, 2) == Fraction(9, arg.x)

    @pytest.mark.parametrize("n,k", [(8, 1), (10, 2), (21, 3)])
    def test_golden_vectors_match_closed_form_and_recursion(self, n, k):
        g = ring_with_core(n, k)
        arg = almost_regular(g)
        walks = closed_walk_counts(g, 1, 10)
        chc = chc_build(walks, 10)
        rec = cm_recursion(arg, 10)
        for m in range(2, 11):
            golden = GOLDEN_CM[m](walks.counts, Fraction(arg.x))
            assert cm_closed_form(arg, chc, m) == golden
            assert rec[m - 2] == golden

    def test_triple_equality_with_general_engine(self):
        for g in (ring_with_core(8, 2), star(9), ring_with_core(13, 1)):
            arg = almost_regular(g)
            chc = chc_build(closed_walk_counts(g, 1, 10), 10)
            rec = cm_recursion(arg, 10)
            table = coefficients(g, 1, 10)
            for m in range(2, 11):
                assert rec[m - 2] == cm_closed_form(arg, chc, m) == table.c_at(m)

    def test_half_range_sum_equals_full_range(self):
        g = ring_with_core(9, 1)
        arg = almost_regular(g)
        chc = chc_build(closed_walk_counts(g, 1, 12), 12)
        from lap_perturb.almost_regular import _g_weight

        for m in range(2, 13):
            full = sum(_g_weight(k, m) * chc.value(k, m) for k in range(1, m + 1))
            half = sum(_g_weight(k, m) * chc.value(k, m) for k in range(1, m // 2 + 1))
            assert full == half


class TestChcBound:
    def test_bounds_complete_graph_in_valid_region(self):
        for n in range(3, 13):
            for m in range(2, 11):
                for k in range(1, m // 2 + 1):
                    value = abs(complete_graph_chc(n, k, m))
                    assert value <= chc_bound(n, k, m), (n, k, m)
                    assert value <= chc_bound_half(n, k, m), (n, k, m)

    def test_exact_at_half_order_even_m(self):
        # at k = m/2 every composition is all twos, so A = (N-1)^(m/2) = bound
        for n in (4, 8, 12):
            for m in (2, 4, 6, 8, 10):
                k = m // 2
                assert complete_graph_chc(n, k, m) == chc_bound(n, k, m)

    def test_zero_power_convention_at_m_equals_2k(self):
        assert chc_bound(5, 3, 6) == Fraction(4) ** 6 / Fraction(4) ** 3

    def test_region_validated(self):
        with pytest.raises(ValueError):
            chc_bound(5, 3, 5)
        with pytest.raises(ValueError):
            chc_bound(2, 1, 4)


class TestAlmostRegularSeries:
    def test_zeta_zero_is_degree(self):
        arg = almost_regular(ring_with_core(9, 1))
        series = almost_regular_series(arg, 0, 6)
        assert all(series.at(K) == 8 for K in series.orders)

    def test_partial_sums_match_general_taylor(self):
        g = ring_with_core(11, 2)
        arg = almost_regular(g)
        series = almost_regular_series(arg, Fraction(-1, 2), 12)
        from lap_perturb.perturb import taylor_partial_sums

        general = taylor_partial_sums(coefficients(g, 1, 12), Fraction(-1, 2))
        assert all(series.at(K) == general.at(K) for K in range(2, 13))

    def test_ring_21_1_converges_to_mu1(self):
        g = ring_with_core(21, 1)
        series = almost_regular_series(almost_regular(g), -1, 80)
        # complement of g leaves node 1 isolated, so mu_1 = n exactly
        assert abs(series.at(80) - 21) < Fraction(1, 10**12)
        assert abs(series.at(40) - 21) < abs(series.at(10) - 21)

    def test_ring_21_9_diverges(self):
        series = almost_regular_series(almost_regular(ring_with_core(21, 9)), -1, 60)
        assert abs(series.at(60)) > 10**60


class TestAlmostRegularEuler:
    def test_t_zero_collapses_to_plain_series(self):
        arg = almost_regular(ring_with_core(10, 1))
        eul = almost_regular_euler(arg, Fraction(-1, 2), 0, 12)
        ser = almost_regular_series(arg, Fraction(-1, 2), 12)
        assert all(eul.at(K) == ser.at(K) for K in range(2, 13))

    def test_extends_convergence_beyond_plain_series(self):
        g = ring_with_core(21, 1)
        arg = almost_regular(g)
        mu1 = symmetric_eigen(perturbed_matrix(g, -2), precision_bits=128).eigenvalues[0]
        plain = almost_regular_series(arg, -2, 80)
        euler = almost_regular_euler(arg, -2, -1, 80)
        with mpmath.workprec(128):
            assert abs(to_mpf(plain.at(80)) - mu1) > mpmath.mpf(10) ** -3
            assert abs(to_mpf(euler.at(80)) - mu1) < mpmath.mpf(10) ** -8

    def test_ring_21_9_diverges_for_all_t(self):
        arg = almost_regular(ring_with_core(21, 9))
        for t in (-1, -2, -3):
            eul = almost_regular_euler(arg, -2, t, 60)
            assert abs(eul.at(60)) > 10**20, t

    def test_singular_transform_rejected(self):
        arg = almost_regular(ring_with_core(10, 1))
        with pytest.raises(ValueError, match="singular"):
            almost_regular_euler(arg, -1, 1, 10)


class TestContourEigenvalue:
    def test_zeta_zero_is_degree_exactly(self):
        result = contour_eigenvalue(almost_regular(ring_with_core(21, 1)), 0)
        assert result.value == 20

    def test_agrees_with_series_limit(self):
        arg = almost_regular(ring_with_core(21, 1))
        series = almost_regular_series(arg, -1, 120)
        result = contour_eigenvalue(arg, Fraction(-1), precision_bits=128)
        with mpmath.workprec(128):
            assert abs(result.value - to_mpf(series.at(120))) < mpmath.mpf(10) ** -20

    def test_doubling_is_stable(self):
        arg = almost_regular(ring_with_core(21, 1))
        result = contour_eigenvalue(arg, Fraction(-1, 2), precision_bits=128)
        assert result.last_change < mpmath.mpf(10) ** -10
        assert result.branch_ok

    def test_pole_inside_contour_rejected(self):
        arg = almost_regular(ring_with_core(21, 1))
        with pytest.raises(ContourError, match="pole"):
            contour_eigenvalue(arg, Fraction(-1), radius=1.0)

    def test_branch_condition_violation_raises(self):
        arg = almost_regular(ring_with_core(21, 9))  # x = 1 makes the ratio huge
        with pytest.raises(ContourError, match="branch condition"):
            contour_eigenvalue(arg, Fraction(-1))

    def test_non_convergence_raises(self):
        # a near-pole radius slows the trapezoid rule; a tight tolerance with a
        # small point cap must be reported, not silently accepted
        arg = almost_regular(ring_with_core(21, 1))
        with pytest.raises(ContourError, match="did not converge"):
            contour_eigenvalue(arg, Fraction(-1), radius=Fraction(17, 100),
                               quad_points=16, max_points=64, rel_tol=1e-14)

    def test_quad_points_must_be_power_of_two(self):
        arg = almost_regular(ring_with_core(21, 1))
        with pytest.raises(ValueError, match="power of two"):
            contour_eigenvalue(arg, Fraction(-1), quad_points=500)
