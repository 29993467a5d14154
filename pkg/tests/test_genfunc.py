from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hstrata import (
    ClosedForm,
    RatPoly,
    TruncatedSeries3,
    asymptotic_proportion,
    closed_form_coeffs,
    double_factorial_coeff,
    double_factorial_poly,
    falling_factorial_poly,
    poly_bernoulli,
    poly_bernoulli_series,
    series_pipeline_check,
    single_cycle_count,
    stirling2,
    stratum_count,
    stratum_poly,
    stratum_series,
    tally_dimensions,
)
from hstrata.genfunc import stirling2_by_alternating_sum

from conftest import count_set_partitions

F = Fraction

# Golden closed-form coefficient rows; the (4,0) row is deliberately absent
# and is pinned against enumeration instead (see
# TestClosedForm.test_4_0_against_enumeration).
GOLDEN_ROWS = {
    (2, 0): {3: F(3, 4), 2: F(-1, 2), 1: F(1, 2), -1: F(-1, 4)},
    (2, 1): {3: F(1), 2: F(-1, 2)},
    (2, 2): {3: F(1, 4), 1: F(-1, 2), -1: F(1, 4)},
    (3, 0): {4: F(15, 8), 3: F(-9, 4), 2: F(13, 8), -1: F(-3, 4), -2: F(3, 8)},
    (3, 3): {4: F(1, 8), 2: F(-3, 8), -2: F(-1, 8)},
    (4, 4): {5: F(1, 16), 3: F(-1, 4), 1: F(3, 8), -1: F(-1, 4), -3: F(1, 16)},
    (5, 0): {
        6: F(945, 32),
        5: F(-525, 8),
        4: F(2025, 32),
        3: F(-30),
        2: F(23, 16),
        -2: F(225, 32),
        -3: F(-75, 8),
        -4: F(105, 32),
    },
}


polys = st.lists(st.fractions(max_denominator=6), max_size=5).map(RatPoly)


class TestRatPoly:
    def test_normalization_and_degree(self):
        assert RatPoly([1, 2, 0, 0]).degree == 1
        assert RatPoly([]).degree == -1
        assert RatPoly([0, 0]).degree == -1
        assert not RatPoly([0])
        assert RatPoly([0, 1]).coeff(5) == 0

    def test_evaluation(self):
        p = RatPoly([3, 4, 1])  # 3 + 4t + t^2
        assert p(0) == 3
        assert p(1) == 8
        assert p(F(1, 2)) == F(21, 4)

    def test_division_and_power(self):
        t = RatPoly.t()
        assert (t + 1) ** 2 == RatPoly([1, 2, 1])
        assert RatPoly([2, 4]) / 2 == RatPoly([1, 2])
        with pytest.raises(ValueError):
            t ** -1

    def test_str(self):
        assert str(RatPoly([3, 4, 1])) == "3 + 4*t + t^2".replace("t^2", "1*t^2")
        assert str(RatPoly()) == "0"

    @given(polys, polys, polys)
    def test_ring_identities(self, p, q, r):
        assert p + q == q + p
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r
        assert (p - p).is_zero()

    @given(polys, polys, st.fractions(max_denominator=4))
    def test_evaluation_is_a_homomorphism(self, p, q, x):
        assert (p * q)(x) == p(x) * q(x)
        assert (p + q)(x) == p(x) + q(x)


class TestStirling:
    @pytest.mark.parametrize("n", range(0, 8))
    def test_against_partition_enumeration(self, n):
        for k in range(0, n + 2):
            assert stirling2(n, k) == count_set_partitions(n, k)

    def test_specific_values(self):
        assert stirling2(3, 2) == 3
        assert stirling2(4, 2) == 7
        assert stirling2(0, 0) == 1
        assert stirling2(5, 0) == 0
        assert all(stirling2(n, 1) == 1 for n in range(1, 10))

    def test_alternating_sum_identity(self):
        for n in range(0, 21):
            for k in range(0, 21):
                assert stirling2(n, k) == stirling2_by_alternating_sum(n, k)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            stirling2(-1, 0)


class TestFallingFactorial:
    def test_t_squared_minus_t(self):
        assert falling_factorial_poly(RatPoly.t(), 2) == RatPoly([0, -1, 1])

    def test_affine_argument(self):
        half = RatPoly([F(1, 2), F(-1, 2)])  # (1 - t)/2
        assert falling_factorial_poly(half, 1) == half
        neg = RatPoly([F(-1, 2), F(-1, 2)])  # -(1 + t)/2
        assert falling_factorial_poly(neg, 2)(1) == 2

    def test_empty_product(self):
        assert falling_factorial_poly(RatPoly.t(), 0) == RatPoly([1])
        with pytest.raises(ValueError):
            falling_factorial_poly(RatPoly.t(), -1)


class TestStratumCount:
    @pytest.mark.parametrize(
        "m,n,expected",
        [
            (1, 1, [1, 1]),
            (2, 1, [2, 2]),
            (2, 2, [5, 7, 2]),
            (3, 1, [4, 4]),
        ],
    )
    def test_small_profiles(self, m, n, expected):
        profile = [stratum_count(m, n, d) for d in range(len(expected))]
        assert profile == expected

    def test_spot_values(self):
        assert stratum_count(2, 1, 0) == 2
        assert stratum_count(2, 2, 0) == 5
        assert stratum_count(2, 3, 0) == 17
        assert stratum_count(3, 3, 0) == 70

    @pytest.mark.parametrize("m,n", [(1, 1), (2, 2), (3, 2), (2, 4), (3, 3), (1, 6)])
    def test_matches_enumeration(self, m, n):
        tally = tally_dimensions(m, n)
        top = (m + n) // 2
        for d in range(0, top + 2):
            assert stratum_count(m, n, d) == tally.count(d)

    def test_matches_enumeration_beyond_acceptance_scale(self):
        # 4x5 sits outside the exhaustive acceptance sweeps (20 cells)
        tally = tally_dimensions(4, 5)
        assert tally.total == poly_bernoulli(4, 5)
        for d in range(0, 6):
            assert stratum_count(4, 5, d) == tally.count(d)

    def test_symmetry_in_m_and_n(self):
        for m in range(1, 7):
            for n in range(1, 7):
                assert stratum_poly(m, n) == stratum_poly(n, m)

    def test_totals_are_poly_bernoulli(self):
        for m in range(1, 7):
            for n in range(1, 7):
                assert stratum_poly(m, n)(1) == poly_bernoulli(m, n)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            stratum_count(2, 0, 0)
        with pytest.raises(ValueError):
            stratum_count(0, 2, 0)
        with pytest.raises(ValueError):
            stratum_count(2, 2, -1)


class TestClosedForm:
    @pytest.mark.parametrize("m,d", sorted(GOLDEN_ROWS))
    def test_golden_rows(self, m, d):
        assert closed_form_coeffs(m, d).coeffs == GOLDEN_ROWS[(m, d)]

    def test_4_0_against_enumeration(self):
        cf = closed_form_coeffs(4, 0)
        for n in range(1, 5):
            assert cf.evaluate(n) == tally_dimensions(4, n).count(0)

    def test_evaluate_matches_count(self):
        for m in range(1, 6):
            for d in range(0, m + 2):
                cf = closed_form_coeffs(m, d)
                for n in range(1, 7):
                    assert cf.evaluate(n) == stratum_count(m, n, d)

    def test_leading_coefficient(self):
        # the coefficient of (m+1)^n is 2^-m times the t^d coefficient of
        # (t+1)(t+3)...(t+2m-1), for every d
        for m in range(1, 7):
            for d in range(0, m + 2):
                cf = closed_form_coeffs(m, d)
                expected = F(double_factorial_coeff(m, d), 2**m)
                assert cf.coeff(m + 1) == expected

    def test_no_zero_base(self):
        for m in range(1, 5):
            for d in range(0, m + 1):
                assert 0 not in closed_form_coeffs(m, d).coeffs

    def test_json_round_trip(self):
        cf = closed_form_coeffs(2, 0)
        data = cf.to_json_dict()
        assert data == {
            "m": 2,
            "d": 0,
            "coeffs": {"3": "3/4", "2": "-1/2", "1": "1/2", "-1": "-1/4"},
        }
        assert ClosedForm.from_json_dict(data) == cf

    def test_validation(self):
        with pytest.raises(ValueError):
            ClosedForm(2, 0, {0: F(1)})
        with pytest.raises(ValueError):
            ClosedForm(2, 0, {5: F(1)})
        with pytest.raises(ValueError):
            closed_form_coeffs(2, 0).evaluate(0)


class TestDoubleFactorialPoly:
    def test_m_equals_2(self):
        assert double_factorial_poly(2) == RatPoly([3, 4, 1])
        assert [double_factorial_coeff(2, d) for d in (0, 1, 2)] == [3, 4, 1]

    def test_m_equals_1(self):
        assert double_factorial_poly(1) == RatPoly([1, 1])

    def test_value_at_one_is_even_factorial(self):
        for m in range(1, 8):
            assert double_factorial_poly(m)(1) == 2**m * factorial(m)


class TestAsymptoticProportion:
    def test_known_values(self):
        assert asymptotic_proportion(2, 0) == F(3, 8)
        assert asymptotic_proportion(2, 1) == F(1, 2)
        assert asymptotic_proportion(1, 0) == F(1, 2)
        assert asymptotic_proportion(1, 1) == F(1, 2)

    def test_proportions_sum_to_one(self):
        for m in range(1, 9):
            assert sum(asymptotic_proportion(m, d) for d in range(m + 1)) == 1

    def test_domain(self):
        with pytest.raises(ValueError):
            asymptotic_proportion(2, 3)
        with pytest.raises(ValueError):
            asymptotic_proportion(2, -1)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_convergence_with_geometric_envelope(self, m):
        # the exact gap |h(m,n,d)/total - limit| falls below 1/1000 by n=40
        # and is dominated by C * (m/(m+1))^n with C fitted on early terms
        ratio = F(m, m + 1)
        for d in range(m + 1):
            cf = closed_form_coeffs(m, d)
            limit = asymptotic_proportion(m, d)

            def gap(n):
                return abs(F(cf.evaluate(n), poly_bernoulli(m, n)) - limit)

            scale = max(gap(n) / ratio**n for n in range(5, 21))
            for n in range(21, 41):
                assert gap(n) <= scale * ratio**n
            assert gap(40) < F(1, 1000)


class TestSeries:
    def test_exponential_coefficient_normalization(self):
        s = TruncatedSeries3.exponential(3, 3, 1, 1)  # e^(x+y)
        assert s.coeff(2, 1) == RatPoly([F(1, 2)])
        assert s.egf_coeff(2, 1) == RatPoly([1])

    def test_stratum_series_matches_closed_form(self):
        series = stratum_series(4, 4)
        for m in range(1, 5):
            for n in range(1, 5):
                assert series.egf_coeff(m, n) == stratum_poly(m, n)

    def test_total_series_matches_poly_bernoulli(self):
        series = poly_bernoulli_series(4, 4)
        for m in range(1, 5):
            for n in range(1, 5):
                assert series.egf_coeff(m, n) == RatPoly([poly_bernoulli(m, n)])

    def test_pipeline_check_small_orders(self):
        assert series_pipeline_check(1, 1)
        assert series_pipeline_check(3, 3)

    def test_pipeline_check_detects_perturbation(self):
        def perturbed(i, j):
            return single_cycle_count(i, j) + (1 if (i, j) == (2, 2) else 0)

        assert not series_pipeline_check(3, 3, cycle_counts=perturbed)

    def test_exp_requires_zero_constant(self):
        s = TruncatedSeries3.constant(2, 2, 1)
        with pytest.raises(ValueError, match="constant"):
            s.exp()

    def test_log_and_inverse_require_unit_constant(self):
        zero = TruncatedSeries3(2, 2)
        with pytest.raises(ValueError, match="constant"):
            zero.log()
        with pytest.raises(ValueError, match="constant"):
            zero.inverse()

    def test_log_inverts_exp(self):
        rows = [[RatPoly() for _ in range(4)] for _ in range(4)]
        rows[1][0] = RatPoly([1])
        rows[1][1] = RatPoly([0, F(1, 2)])
        rows[0][2] = RatPoly([F(-1, 3)])
        s = TruncatedSeries3(3, 3, rows)
        assert s.exp().log() == s

    def test_inverse_is_reciprocal(self):
        s = TruncatedSeries3.exponential(3, 3, 1, -1)
        product = s * s.inverse()
        assert product == TruncatedSeries3.constant(3, 3, 1)

    def test_mismatched_orders_rejected(self):
        with pytest.raises(ValueError):
            TruncatedSeries3.constant(2, 2, 1) + TruncatedSeries3.constant(3, 3, 1)

    def test_truncation_orders_validated(self):
        with pytest.raises(ValueError):
            TruncatedSeries3(0, 2)

    def test_binomial_theorem_via_pow_poly(self):
        # (e^x + e^y - 1)^2 computed through exp/log agrees with direct squaring
        base = (
            TruncatedSeries3.exponential(3, 3, 1, 0)
            + TruncatedSeries3.exponential(3, 3, 0, 1)
            - 1
        )
        assert base.pow_poly(2) == base * base
