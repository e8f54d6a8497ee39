import math
import random
from fractions import Fraction as F

import pytest

from holopi.numerics import (
    HPReal,
    NegativeInput,
    QuadraticNumber,
    RationalizationFailed,
    agreed_digits,
    alternating_sum,
    alternating_sum_split,
    alternating_terms_for_digits,
    hp_exp,
    hp_sqrt,
    pi_oracle,
    pi_oracle_alt,
    quad_mag_sign,
    quadratic_to_hp,
    quadratic_to_hp_safe,
    rationalize,
)

PI_50 = "3.14159265358979323846264338327950288419716939937511"


def rand_fraction(rng, span=50):
    return F(rng.randint(-span, span), rng.randint(1, span))


def test_field_axioms_random():
    rng = random.Random(12345)
    for _ in range(200):
        a, b, c = (rand_fraction(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        if a != 0:
            assert a * (1 / a) == 1


class TestQuadratic:
    def test_construction_canonicalizes_zero_surd(self):
        q = QuadraticNumber(F(3, 2), F(0), 7)
        assert q.radicand == 1

    def test_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            QuadraticNumber(F(1), F(1), 12)

    def test_arithmetic_and_inverse(self):
        x = QuadraticNumber.from_rational(1) / QuadraticNumber(38, 6, 33)
        assert x == QuadraticNumber(F(19, 128), F(-3, 128), 33)
        assert (x * QuadraticNumber(38, 6, 33)).rational == 1

    def test_mixed_radicands_rejected(self):
        a = QuadraticNumber(1, 1, 2)
        b = QuadraticNumber(1, 1, 3)
        with pytest.raises(ValueError):
            a + b

    def test_conjugate_product_matches_norm(self):
        rng = random.Random(99)
        for _ in range(20):
            v = QuadraticNumber(rand_fraction(rng), rand_fraction(rng), 5)
            if v.surd == 0:
                continue
            prod = quadratic_to_hp(v, 128) * quadratic_to_hp(v.conjugate(), 128)
            norm = v.rational**2 - v.surd**2 * 5
            assert agreed_digits(prod, HPReal.from_fraction(norm, 128)) >= 30


class TestHPReal:
    def test_fraction_roundtrip_exactness(self):
        rng = random.Random(4)
        for _ in range(50):
            fr = rand_fraction(rng, 1000)
            hp = HPReal.from_fraction(fr, 200)
            assert abs(hp.to_fraction() - fr) <= abs(fr) / F(2) ** 190 + F(1, 2**190)

    def test_arithmetic_at_max_precision(self):
        a = HPReal.from_fraction(F(1, 3), 64)
        b = HPReal.from_fraction(F(1, 7), 256)
        assert (a + b).prec == 256
        assert (a * b).prec == 256

    def test_sqrt_examples(self):
        assert hp_sqrt(HPReal.from_int(4, 128)).to_fraction() == 2
        r = hp_sqrt(HPReal.from_int(8, 128))
        # Newton-style residual check at working precision
        assert abs(r.to_fraction() ** 2 - 8) < F(8, 2**120)
        assert hp_sqrt(HPReal.from_int(0, 64)).is_zero()

    def test_sqrt_negative(self):
        with pytest.raises(NegativeInput):
            hp_sqrt(HPReal.from_int(-1, 64))

    def test_exp_against_taylor_oracle(self):
        e_oracle = sum(F(1, math.factorial(k)) for k in range(60))
        e = hp_exp(HPReal.from_int(1, 220))
        assert agreed_digits(e, HPReal.from_fraction(e_oracle, 220)) >= 55


class TestQuadraticToHP:
    def test_identity_case(self):
        v = QuadraticNumber(F(1), F(0), 1)
        assert quadratic_to_hp(v, 64).to_fraction() == 1

    def test_sqrt2_against_isqrt_oracle(self):
        v = QuadraticNumber(F(0), F(1), 2)
        got = quadratic_to_hp(v, 128)
        scaled = math.isqrt(2 << 260)  # independent digit source
        oracle = F(scaled, 1 << 130)
        assert agreed_digits(got, HPReal.from_fraction(oracle, 140)) >= 36
        assert abs(got.to_fraction() ** 2 - 2) < F(1, 2**125)

    def test_reciprocal_of_surd_denominator(self):
        # 1/(38 + 6 sqrt 33) rationalized; product check at precision
        x = QuadraticNumber(F(19, 128), F(-3, 128), 33)
        val = quadratic_to_hp(x, 128)
        back = val * quadratic_to_hp(QuadraticNumber(38, 6, 33), 128)
        assert agreed_digits(back, HPReal.from_int(1, 128)) >= 35

    def test_cancellation_safe_conversion(self):
        # rational part approximates sqrt(33) to ~80 digits: the components
        # dwarf their difference, which a fixed working precision cannot see
        approx = F(math.isqrt(33 * 10**160), 10**80)
        v = QuadraticNumber(approx, F(-1), 33)
        mag, sign = quad_mag_sign(v)
        assert mag < -240  # value below 1e-75
        safe = quadratic_to_hp_safe(v, 64)
        assert not safe.is_zero() and safe.sign() == sign


class TestPiOracle:
    def test_coarse_digits(self):
        assert pi_oracle(1).to_decimal(1) == "3.1"
        assert pi_oracle(10).to_decimal(9) == "3.141592654"  # rounded display

    def test_against_known_digits(self):
        assert pi_oracle(50).to_decimal(50) == PI_50

    def test_independent_formulas_agree(self):
        for digits in (10, 60, 120):
            a = pi_oracle(digits)
            b = pi_oracle_alt(digits)
            assert agreed_digits(a, b) >= digits

    def test_self_consistency_under_refinement(self):
        for digits in (10, 50, 100, 500):
            a = pi_oracle(digits)
            b = pi_oracle(digits + 20)
            assert agreed_digits(a, b) >= digits

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            pi_oracle(0)


class TestRationalize:
    def test_recovers_simple_rationals(self):
        for fr in (F(1, 3), F(-67, 340), F(143, 238), F(7)):
            noisy = HPReal.from_fraction(fr + F(1, 10**45), 300)
            assert rationalize(noisy, 40) == fr

    def test_rejects_irrationals(self):
        for bad in (hp_sqrt(HPReal.from_int(2, 300)), pi_oracle(60)):
            with pytest.raises(RationalizationFailed):
                rationalize(bad, 50)


class TestAlternatingAcceleration:
    def test_leibniz_pi_over_four(self):
        n = alternating_terms_for_digits(60)
        val = alternating_sum(lambda k: F(1, 2 * k + 1), n)
        ref = pi_oracle(70).to_fraction() / 4
        assert abs(val - ref) < F(1, 10**58)

    def test_ln2_against_geometric_oracle(self):
        ln2 = sum(F(1, m * 2**m) for m in range(1, 250))
        val = alternating_sum_split(lambda k: F(1, k + 1), 50)
        assert abs(val - ln2) < F(1, 10**48)
