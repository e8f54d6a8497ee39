"""q-expansions of eta quotients and Eisenstein P, with exact identity
verification of the modular parameterizations and numeric evaluation at
real q for the table of series data.

q-series reuse TruncatedSeries (same exact-coefficient algebra, variable q).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .numerics import (
    HPReal,
    QuadraticNumber,
    RationalizationFailed,
    alternating_sum_split,
    bits_for_digits,
    frac_log2,
    hp_exp,
    hp_sqrt,
    pi_oracle,
    quad_mag_sign,
    quadratic_to_hp,
    quadratic_to_hp_safe,
    rat,
    rationalize,
)
from .series import TruncatedSeries


class FractionalOffset(ValueError):
    """Eta quotient whose q^(1/24) offsets do not combine to an integer."""


class QOutOfRange(ValueError):
    pass


QSeries = TruncatedSeries


def euler_factor(scale: int, order: int) -> TruncatedSeries:
    """prod_{j>=1} (1 - q^(scale*j)) via the pentagonal-number expansion."""
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[0] = Fraction(1)
    k = 1
    while True:
        e1 = scale * k * (3 * k - 1) // 2
        e2 = scale * k * (3 * k + 1) // 2
        if e1 > order and e2 > order:
            break
        sign = -1 if k % 2 else 1
        if e1 <= order:
            coeffs[e1] += sign
        if e2 <= order:
            coeffs[e2] += sign
        k += 1
    return TruncatedSeries(coeffs, order)


def eta_quotient_expand(factors, order: int) -> TruncatedSeries:
    """Exact q-expansion of prod eta(scale*tau)^multiplicity.

    The combined offset sum(scale*mult)/24 must be a nonnegative integer; it
    is absorbed as a power of q in the expansion.
    """
    offset24 = sum(scale * mult for scale, mult in factors)
    if offset24 % 24 != 0 or offset24 < 0:
        raise FractionalOffset(
            f"offset {offset24}/24 is not a nonnegative integer"
        )
    shift = offset24 // 24
    if shift > order:
        return TruncatedSeries.zero(order)
    acc = TruncatedSeries.one(order)
    for scale, mult in factors:
        if mult == 0:
            continue
        base = euler_factor(scale, order)
        acc = acc * base.pow_rational(mult, 1)
    return acc.mul_xpow(shift)


def eisenstein_P(scale: int, order: int) -> TruncatedSeries:
    """P(q^scale) = 1 - 24 sum sigma_1(m) q^(scale*m), truncated."""
    coeffs = [Fraction(0)] * (order + 1)
    coeffs[0] = Fraction(1)
    m_max = order // scale if scale <= order else 0
    if m_max:
        sigma = [0] * (m_max + 1)
        for d in range(1, m_max + 1):
            for m in range(d, m_max + 1, d):
                sigma[m] += d
        for m in range(1, m_max + 1):
            coeffs[scale * m] = Fraction(-24 * sigma[m])
    return TruncatedSeries(coeffs, order)


# -- the modular pairs used by the catalog ----------------------------------


def level24_pair(order: int):
    """(z, x): the weight-one form and hauptmodul carrying the level-24 data."""
    eta_prod = eta_quotient_expand([(2, 1), (4, 1), (6, 1), (12, 1)], order)
    z = (
        eisenstein_P(12, order) * 6
        - eisenstein_P(6, order) * 3
        + eisenstein_P(4, order) * 2
        - eisenstein_P(2, order)
    ) * Fraction(1, 4) + eta_prod * 2
    x = eta_prod * z.inverse()
    return z, x


def level6_zy(order: int):
    """(z, y) of the level-6 product pair behind the Domb parameterization."""
    z = eta_quotient_expand([(1, 4), (3, 4), (2, -2), (6, -2)], order)
    y = eta_quotient_expand([(2, 6), (6, 6), (1, -6), (3, -6)], order)
    return z, y


def _negate_odd(s: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(
        tuple(-c if n % 2 else c for n, c in enumerate(s.coeffs)), s.order
    )


def _shift_down_unit(s: TruncatedSeries) -> TruncatedSeries:
    """s/q for a series with q-valuation >= 1 (drops the top coefficient)."""
    if s.coeffs[0] != 0:
        raise ValueError("series has nonzero constant term")
    return TruncatedSeries(s.coeffs[1:], s.order - 1)


def _seq_series(seq_id: str, order: int) -> TruncatedSeries:
    from . import catalog

    seq = catalog.sequence(seq_id)
    return TruncatedSeries([seq.term(n) for n in range(order + 1)], order)


def verify_q_identity(identity_id: str, order: int) -> bool:
    """Exact q-expansion check of the named modular identity."""
    if identity_id == "th":
        z, x = level24_pair(order)
        rhs = _seq_series("t24", order).compose(x)
        return z.eq_to_order(rhs, order)
    if identity_id == "th2":
        z, x = level24_pair(order)
        qdx = x.apply_D()
        radicand = (
            TruncatedSeries.from_poly([1, 4], order).compose(x)
            * TruncatedSeries.from_poly([1, -4], order).compose(x)
            * TruncatedSeries.from_poly([1, -8], order).compose(x)
        )
        rhs = z * x * radicand.sqrt()
        return qdx.eq_to_order(rhs, order)
    if identity_id == "x-symmetry":
        _, x = level24_pair(order + 1)
        u = _shift_down_unit(x)
        w = _shift_down_unit(_negate_odd(x))
        bracket = u.inverse() + w.inverse()
        # 1/x(q) + 1/x(-q) = bracket/q must equal the constant 4
        expect = TruncatedSeries.from_poly([0, 4], bracket.order)
        return bracket.eq_to_order(expect, bracket.order)
    if identity_id == "par":
        return _verify_par(order, starred=False)
    if identity_id == "par1":
        return _verify_par(order, starred=True)
    raise KeyError(f"unknown q identity {identity_id!r}")


def _verify_par(order: int, starred: bool) -> bool:
    z, y = level6_zy(order)
    c = 16 if starred else 4
    big_z = (y * c + 1) * z
    if starred:
        d1 = (eisenstein_P(3, order) * 3 - eisenstein_P(1, order)) * Fraction(1, 2)
    else:
        d1 = (eisenstein_P(6, order) * 3 - eisenstein_P(2, order)) * Fraction(1, 2)
    if not big_z.eq_to_order(d1, order):
        return False
    x = y * (y * c + 1).inverse()
    seq_id = "v6" if starred else "t6"
    d2 = _seq_series(seq_id, order).compose(x)
    if not big_z.eq_to_order(d2, order):
        return False
    # sum (-1)^n u(n) x^n / (1 - c x)^(n+1) = r * U(-x r) with r = 1/(1-cx)
    r = (TruncatedSeries.one(order) - x * c).inverse()
    domb = _seq_series("domb", order)
    d3 = r * domb.compose(-(x * r))
    if not big_z.eq_to_order(d3, order):
        return False
    w = _seq_series("c3c2sq", order)
    if starred:
        inner = x * (TruncatedSeries.one(order) - x * 16) ** 2
    else:
        inner = (x * x) * (TruncatedSeries.one(order) - x * 4)
    d4 = w.compose(inner)
    return big_z.eq_to_order(d4, order)


# ---------------------------------------------------------------------------
# Numeric evaluation at real q


def _check_q(q: HPReal):
    if q.is_zero() or q.log2_magnitude() >= 0:
        raise QOutOfRange("need 0 < |q| < 1")


def eta_product_numeric(q: HPReal, factors, digits: int) -> HPReal:
    """Numeric eta quotient at real q, truncating once factors are within
    10**-(digits+guard) of 1."""
    _check_q(q)
    offset24 = sum(scale * mult for scale, mult in factors)
    if offset24 % 24 != 0:
        raise FractionalOffset(f"offset {offset24}/24 is not an integer")
    prec = q.prec
    one = HPReal.from_int(1, prec)
    cut = -(digits + 10) * math.log2(10)
    acc = one
    for scale, mult in factors:
        qs = _hp_int_pow(q, scale)
        qsj = qs
        factor = one
        while qsj.log2_magnitude() > cut:
            factor = factor * (one - qsj)
            qsj = qsj * qs
        acc = acc * _hp_int_pow_signed(factor, mult)
    shift = offset24 // 24
    return acc * _hp_int_pow(q, shift)


def eisenstein_numeric(q: HPReal, scale: int, digits: int) -> HPReal:
    _check_q(q)
    prec = q.prec
    one = HPReal.from_int(1, prec)
    cut = -(digits + 10) * math.log2(10)
    qs = _hp_int_pow(q, scale)
    acc = HPReal.from_int(0, prec)
    qsj = qs
    j = 1
    while qsj.log2_magnitude() + math.log2(j + 1) > cut:
        acc = acc + qsj.mul_int(j) / (one - qsj)
        j += 1
        qsj = qsj * qs
    return one - acc.mul_int(24)


def _hp_int_pow(q: HPReal, e: int) -> HPReal:
    acc = HPReal.from_int(1, q.prec)
    base = q
    while e:
        if e & 1:
            acc = acc * base
        base = base * base
        e >>= 1
    return acc


def _hp_int_pow_signed(v: HPReal, e: int) -> HPReal:
    if e < 0:
        return HPReal.from_int(1, v.prec) / _hp_int_pow(v, -e)
    return _hp_int_pow(v, e)


_ETA24 = ((2, 1), (4, 1), (6, 1), (12, 1))


def evaluate_modular_at_q(expr_id: str, q: HPReal, digits: int) -> HPReal:
    """Numeric value of a named modular expression at real q."""
    _check_q(q)
    eta = eta_product_numeric(q, _ETA24, digits)
    z = (
        eisenstein_numeric(q, 12, digits).mul_int(6)
        - eisenstein_numeric(q, 6, digits).mul_int(3)
        + eisenstein_numeric(q, 4, digits).mul_int(2)
        - eisenstein_numeric(q, 2, digits)
    ) / HPReal.from_int(4, q.prec) + eta.mul_int(2)
    if expr_id == "z24":
        return z
    if expr_id == "x24":
        return eta / z
    if expr_id == "qdz24":
        # q d/dq of z via termwise differentiation is not available
        # numerically; callers use series data instead
        raise KeyError("qdz24 is not a direct numeric expression")
    raise KeyError(f"unknown modular expression {expr_id!r}")


def q_for_table_row(n_level: int, sign: int, digits: int) -> HPReal:
    """q = sign * exp(-2 pi sqrt(N/24)) at working precision."""
    prec = bits_for_digits(digits) + 48
    pi = pi_oracle(digits + 15).with_prec(prec)
    root = hp_sqrt(HPReal.from_fraction(Fraction(n_level, 24), prec))
    q = hp_exp(-(pi * root).mul_int(2))
    return q if sign > 0 else -q


# ---------------------------------------------------------------------------
# lambda recovery


def _series_sums_at(x_exact, digits: int):
    """S0 = sum t(n) x^n and S1 = sum n t(n) x^n, exactly accumulated.

    Interior points sum directly (geometric decay); the boundary alternating
    case |8x| = 1 goes through the accelerated alternating summation.
    """
    from . import catalog

    t24 = catalog.sequence("t24")
    prec = bits_for_digits(digits) + 48
    if isinstance(x_exact, QuadraticNumber):
        x_hp = quadratic_to_hp(x_exact, prec)
        ratio_mag = 8 * abs(x_hp.to_fraction())
    else:
        x_exact = rat(x_exact)
        ratio_mag = 8 * abs(x_exact)
    if ratio_mag < Fraction(63, 64):
        cut = -(digits + 12) * math.log2(10)
        if isinstance(x_exact, QuadraticNumber):
            s0 = QuadraticNumber.from_rational(0)
            s1 = QuadraticNumber.from_rational(0)
            xp = QuadraticNumber.from_rational(1)
            n = 0
            while True:
                term = xp * t24.term(n)
                s0 = s0 + term
                s1 = s1 + term * n
                mag, _ = quad_mag_sign(term)
                if n > 10 and mag + math.log2(n + 2) < cut:
                    break
                xp = xp * x_exact
                n += 1
            return quadratic_to_hp_safe(s0, prec), quadratic_to_hp_safe(s1, prec)
        s0 = Fraction(0)
        s1 = Fraction(0)
        xp = Fraction(1)
        n = 0
        while True:
            term = t24.term(n) * xp
            s0 += term
            s1 += n * term
            if n > 10 and term != 0 and frac_log2(term) + math.log2(n + 2) < cut:
                break
            xp *= x_exact
            n += 1
        return HPReal.from_fraction(s0, prec), HPReal.from_fraction(s1, prec)
    if isinstance(x_exact, Fraction) and x_exact < 0 and ratio_mag == 1:
        scale = -x_exact
        s0 = alternating_sum_split(lambda k: t24.term(k) * scale**k, digits + 8)
        s1 = alternating_sum_split(lambda k: k * t24.term(k) * scale**k, digits + 8)
        return HPReal.from_fraction(s0, prec), HPReal.from_fraction(s1, prec)
    raise RationalizationFailed(f"series for x = {x_exact} out of reach")


def recover_lambda(n_level: int, sign: int, digits: int, surd: int | None = None):
    """Solve the 1/pi family numerically for lambda_N, then recognize it.

    Returns a Fraction (continued-fraction recognition) or a QuadraticNumber
    if `surd` names the expected radicand; re-verifies the recognized value
    at higher precision before returning.
    """
    value = _recover_lambda_numeric(n_level, sign, digits, surd)
    # re-verify: recompute at higher precision and check agreement
    check = _recover_lambda_numeric(n_level, sign, digits + 12, surd)
    if value != check:
        raise RationalizationFailed(
            f"lambda for N={n_level} unstable between precisions"
        )
    return value


def _recover_lambda_numeric(n_level: int, sign: int, digits: int, surd):
    q = q_for_table_row(n_level, sign, digits + 12)
    x_hp = evaluate_modular_at_q("x24", q, digits + 12)
    if surd is None:
        x_exact = rationalize(x_hp, digits)
    else:
        x_exact = _recognize_quadratic(x_hp, surd, digits)
    prec = x_hp.prec
    if isinstance(x_exact, QuadraticNumber):
        one_m = QuadraticNumber.from_rational(1)
        rad = (one_m + x_exact * 4) * (one_m - x_exact * 4) * (one_m - x_exact * 8)
        rad_hp = quadratic_to_hp(rad, prec)
    else:
        rad = (1 + 4 * x_exact) * (1 - 4 * x_exact) * (1 - 8 * x_exact)
        rad_hp = HPReal.from_fraction(rad, prec)
    s0, s1 = _series_sums_at(x_exact, digits + 10)
    pi = pi_oracle(digits + 12).with_prec(prec)
    target = hp_sqrt(HPReal.from_fraction(Fraction(24, n_level), prec)) / (
        pi.mul_int(2)
    )
    lam_hp = (target / hp_sqrt(rad_hp) - s1) / s0
    if surd is None:
        return rationalize(lam_hp, digits)
    return _recognize_quadratic(lam_hp, surd, digits)


def _recognize_quadratic(v: HPReal, d: int, digits: int) -> QuadraticNumber:
    """Recognize v in Q(sqrt(d)) by integer-relation detection on {1, sqrt d}."""
    from .satellite import pslq

    prec = bits_for_digits(digits) + 64
    root = hp_sqrt(HPReal.from_int(d, prec))
    vv = v.with_prec(prec)
    rel = pslq([HPReal.from_int(1, prec), root, vv, vv * root], digits)
    if rel is None:
        raise RationalizationFailed(f"no quadratic relation over sqrt({d})")
    c0, c1, c2, c3 = (Fraction(c) for c in rel)
    denom = QuadraticNumber(c2, c3, d)
    if denom.is_zero():
        raise RationalizationFailed("degenerate quadratic relation")
    cand = -(QuadraticNumber(c0, c1, d) / denom)
    # confirm numerically
    if agreed := _agree(quadratic_to_hp(cand, prec), vv, digits - 6):
        return cand
    raise RationalizationFailed(f"quadratic candidate failed at {digits} digits")


def _agree(a: HPReal, b: HPReal, digits: int) -> bool:
    from .numerics import agreed_digits

    return agreed_digits(a, b) >= digits
