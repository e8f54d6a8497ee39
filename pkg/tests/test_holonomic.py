from fractions import Fraction as F

import pytest

from holopi import catalog
from holopi.holonomic import (
    InsufficientTerms,
    LeadingCoefficientZero,
    LODE,
    PRecurrence,
    apply_ode,
    guess_recurrence,
    ode_to_recurrence,
    precurrence_from_offsets,
)
from holopi.poly import poly, poly_mul
from holopi.series import OrderTooSmall, TruncatedSeries


def solution_series(seq_id, order):
    seq = catalog.sequence(seq_id)
    return TruncatedSeries([seq.term(i) for i in range(order + 1)], order)


class TestOdeToRecurrence:
    def test_monomial_equation(self):
        # x y' - y = 0 annihilates exactly the multiples of x
        rec = ode_to_recurrence(LODE([[0, -1], [0, 1]]))
        assert rec.order >= 1
        assert rec.annihilates([F(0), F(1), F(0), F(0), F(0)])
        assert not rec.annihilates([F(1), F(0), F(0)])

    def test_level24_ode_gives_four_term_recurrence(self):
        ode, sol = catalog.ode("de24")
        rec = ode_to_recurrence(ode)
        target = catalog.sequence(sol).recurrence
        assert rec.proportional_to(target.normalized())

    def test_level6_alternate_ode_gives_u4(self):
        ode, sol = catalog.ode("par")
        rec = ode_to_recurrence(ode)
        target = catalog.sequence(sol).recurrence
        assert rec.proportional_to(target.normalized())

    def test_roundtrip_forward_evaluation(self):
        for oid in ("de24", "de6", "par"):
            ode, sol = catalog.ode(oid)
            seq = catalog.sequence(sol)
            rec = ode_to_recurrence(ode)
            rerun = PRecurrence(
                rec.coeffs, [seq.term(i) for i in range(rec.order)], rec.valid_from
            )
            assert all(rerun.term(n) == seq.term(n) for n in range(61))


class TestApplyOde:
    def test_annihilation_at_order_forty(self):
        for oid in ("de24", "de6", "par"):
            ode, sol = catalog.ode(oid)
            s = solution_series(sol, 40 + ode.order + ode.max_degree)
            assert apply_ode(ode, s).is_zero()

    def test_perturbation_detected(self):
        ode, sol = catalog.ode("de24")
        s = solution_series(sol, 48)
        coeffs = list(s.coeffs)
        coeffs[5] += 1
        assert not apply_ode(ode, TruncatedSeries(coeffs, 48)).is_zero()

    def test_order_too_small(self):
        ode, _ = catalog.ode("de24")
        with pytest.raises(OrderTooSmall):
            apply_ode(ode, TruncatedSeries.one(6))


class TestGuessing:
    def test_domb_three_term(self):
        domb = catalog.sequence("domb")
        rec = guess_recurrence([domb.term(i) for i in range(25)], 2, 3)
        assert rec is not None
        expected = precurrence_from_offsets(
            [
                (1, poly([1, 3, 3, 1])),
                (0, poly_mul(poly([-1]), poly_mul(poly([1, 2]), poly([4, 10, 10])))),
                (-1, poly([0, 0, 0, 64])),
            ],
            [1],
        )
        assert rec.proportional_to(expected.normalized())

    def test_constant_sequence(self):
        rec = guess_recurrence([F(1)] * 15, 1, 0)
        assert rec is not None and rec.order == 1
        assert rec.annihilates([F(1)] * 40)

    def test_a14_recurrence_from_expansion_terms(self):
        a14 = catalog.sequence("a14")
        rec = guess_recurrence([a14.term(i) for i in range(30)], 3, 3)
        assert rec is not None
        assert rec.proportional_to(a14.recurrence.normalized())

    def test_guess_annihilates_three_times_window(self):
        t24 = catalog.sequence("t24")
        rec = guess_recurrence([t24.term(i) for i in range(30)], 3, 3)
        assert rec is not None
        assert rec.annihilates([t24.term(i) for i in range(90)])

    def test_insufficient_terms(self):
        with pytest.raises(InsufficientTerms):
            guess_recurrence([F(1)] * 10, 2, 3)

    def test_no_recurrence_for_noise(self):
        import random

        rng = random.Random(5)
        terms = [F(rng.randint(1, 10**9)) for _ in range(40)]
        assert guess_recurrence(terms, 2, 2) is None


class TestPRecurrence:
    def test_leading_coefficient_zero_raises(self):
        # coefficient (m-3) vanishes when computing the term at m = 3
        rec = PRecurrence([[F(1)], [F(-3), F(1)]], [F(1)], valid_from=0)
        with pytest.raises(LeadingCoefficientZero):
            rec.term(5)

    def test_short_initial_segment_with_negative_base(self):
        t24 = catalog.sequence("t24")
        assert t24.recurrence.term(4) == 250
