import random
from fractions import Fraction as F

import pytest

from holopi.series import (
    LaurentSlice,
    NonUnitConstantTerm,
    NonzeroConstantTerm,
    OrderTooSmall,
    TruncatedSeries,
    apply_D,
    series_compose,
    series_mul,
    series_pow_rational,
)


def rand_series(rng, order, zero_constant=False, unit_constant=False):
    coeffs = [F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(order + 1)]
    if zero_constant:
        coeffs[0] = F(0)
    if unit_constant:
        coeffs[0] = F(1)
    return TruncatedSeries(coeffs, order)


class TestMultiplication:
    def test_simple_product(self):
        a = TruncatedSeries.from_poly([1, 1], 2)
        b = TruncatedSeries.from_poly([1, -1], 2)
        assert series_mul(a, b).coeffs == (F(1), F(0), F(-1))

    def test_inverse_roundtrip(self):
        t = TruncatedSeries([1, 2, 10, 44, 250, 1412, 8764, 55400, 364858, 2450250, 16645100], 10)
        assert (t * t.inverse()).coeffs == (F(1),) + (F(0),) * 10

    def test_squared_geometric_matches_binomial_series(self):
        g = TruncatedSeries.from_poly([1, -4], 6).pow_rational(-1, 1)
        lhs = g * g
        rhs = TruncatedSeries([(n + 1) * 4**n for n in range(7)], 6)
        assert lhs == rhs

    def test_ring_axioms_random(self):
        rng = random.Random(7)
        for _ in range(25):
            a, b, c = (rand_series(rng, 20) for _ in range(3))
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c


class TestComposition:
    def test_geometric_of_scaled_x(self):
        outer = TruncatedSeries([1, 1, 1, 1], 3)
        inner = TruncatedSeries([0, 2], 3)
        assert series_compose(outer, inner).coeffs == (F(1), F(2), F(4), F(8))

    def test_domb_style_composition(self):
        # outer = Domb series, inner = -x/(1-4x), then multiply by 1/(1-4x):
        # expansion of the alternating-weight reciprocal-power sum
        u = [1, 4, 28, 256, 2716]
        order = 4
        outer = TruncatedSeries(u, order)
        r = TruncatedSeries.from_poly([1, -4], order).pow_rational(-1, 1)
        inner = -(TruncatedSeries.x(order) * r)
        value = r * series_compose(outer, inner)
        assert value.coeffs == (F(1), F(0), F(12), F(-48), F(540))

    def test_rejects_nonzero_constant(self):
        outer = TruncatedSeries([1, 1], 3)
        with pytest.raises(NonzeroConstantTerm):
            series_compose(outer, TruncatedSeries([1, 1], 3))

    def test_associativity_random(self):
        rng = random.Random(21)
        for _ in range(8):
            f = rand_series(rng, 15)
            g = rand_series(rng, 15, zero_constant=True)
            h = rand_series(rng, 15, zero_constant=True)
            assert series_compose(series_compose(f, g), h) == series_compose(
                f, series_compose(g, h)
            )


class TestRationalPowers:
    def test_sqrt_of_one_minus_8x(self):
        s = TruncatedSeries.from_poly([1, -8], 3)
        assert series_pow_rational(s, 1, 2).coeffs == (F(1), F(-4), F(-8), F(-32))

    def test_inverse_power(self):
        s = TruncatedSeries.from_poly([1, 1], 2)
        assert series_pow_rational(s, -1, 1).coeffs == (F(1), F(-1), F(1))

    def test_square_of_sqrt_is_identity(self):
        s = TruncatedSeries.from_poly([1, -8], 10)
        r = series_pow_rational(s, 1, 2)
        assert (r * r) == s

    def test_random_sqrt_squares_back(self):
        rng = random.Random(3)
        for _ in range(10):
            s = rand_series(rng, 30, unit_constant=True)
            r = series_pow_rational(s, 1, 2)
            assert r * r == s

    def test_non_unit_perfect_square_constant(self):
        s = TruncatedSeries.from_poly([F(9, 4), 3], 5)
        r = series_pow_rational(s, 1, 2)
        assert r.coeffs[0] == F(3, 2)
        assert r * r == s

    def test_rejects_non_root_constant(self):
        with pytest.raises(NonUnitConstantTerm):
            series_pow_rational(TruncatedSeries.from_poly([2, 1], 4), 1, 2)


class TestDOperator:
    def test_basic(self):
        s = TruncatedSeries.from_poly([1, 1, 1], 2)
        assert apply_D(s).coeffs == (F(0), F(1), F(2))

    def test_constant_killed(self):
        assert apply_D(TruncatedSeries.from_poly([5], 3)).is_zero()

    def test_on_fourth_power_sums(self):
        f = TruncatedSeries([1, 2, 18, 164], 3)
        assert apply_D(f).coeffs == (F(0), F(2), F(36), F(492))

    def test_leibniz_random(self):
        rng = random.Random(11)
        for _ in range(10):
            a = rand_series(rng, 25)
            b = rand_series(rng, 25)
            assert apply_D(a * b) == apply_D(a) * b + a * apply_D(b)


class TestOrderBookkeeping:
    def test_min_order_propagates(self):
        a = TruncatedSeries.from_poly([1, 1], 10)
        b = TruncatedSeries.from_poly([1, 2], 6)
        assert (a * b).order == 6

    def test_comparison_beyond_order_refused(self):
        a = TruncatedSeries.from_poly([1, 1], 10)
        b = TruncatedSeries.from_poly([1, 1], 6)
        with pytest.raises(OrderTooSmall):
            a.eq_to_order(b, 8)

    def test_coefficient_access_beyond_order_refused(self):
        with pytest.raises(OrderTooSmall):
            TruncatedSeries.from_poly([1], 3)[4]


class TestLaurentSlice:
    def test_equality_by_support(self):
        a = LaurentSlice.from_terms({-1: F(2), 1: F(2)})
        b = LaurentSlice(-1, [2, 0, 2])
        assert a == b

    def test_strips_zero_fringe(self):
        s = LaurentSlice(-3, [0, 0, 5, 0])
        assert s.min_exp == -1 and s.coeffs == (F(5),)
