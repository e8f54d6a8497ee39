"""Exact scalars (rationals, quadratic surds) and high-precision reals.

Rational arithmetic is ``fractions.Fraction``; quadratic surds live in a
single extension Q(sqrt(d)); HPReal is a binary floating-point value
``mantissa * 2**exponent`` carrying its own working precision in bits.
Everything is immutable and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

BigRational = Fraction

LOG2_10 = math.log2(10)


class NegativeInput(ValueError):
    """Square root of a negative value was requested."""


class RationalizationFailed(ValueError):
    """A numeric value could not be recognized as rational/quadratic."""


def rat(value) -> Fraction:
    """Coerce ints, strings like '-3/4', and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def bits_for_digits(digits: int) -> int:
    return int(math.ceil(digits * LOG2_10)) + 8


def guard_bits(term_count: int) -> int:
    """Guard bits added ahead of rounding: ceil(3.33*(10 + log10(terms)))."""
    return int(math.ceil(3.33 * (10.0 + math.log10(max(1, term_count)))))


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Quadratic numbers a + b*sqrt(d)


@dataclass(frozen=True)
class QuadraticNumber:
    """Exact value rational + surd*sqrt(radicand), radicand square-free."""

    rational: Fraction
    surd: Fraction
    radicand: int

    def __post_init__(self):
        object.__setattr__(self, "rational", rat(self.rational))
        object.__setattr__(self, "surd", rat(self.surd))
        if self.surd == 0:
            object.__setattr__(self, "radicand", 1)
        if self.radicand < 1 or not is_squarefree(self.radicand):
            raise ValueError(f"radicand {self.radicand} must be square-free positive")

    @staticmethod
    def from_rational(value) -> "QuadraticNumber":
        return QuadraticNumber(rat(value), Fraction(0), 1)

    def _coerce(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.radicand != self.radicand and other.surd != 0 and self.surd != 0:
                raise ValueError("mixed radicands")
            return other
        return QuadraticNumber.from_rational(other)

    def _join(self, other: "QuadraticNumber") -> int:
        if self.surd == 0:
            return other.radicand
        if other.surd == 0:
            return self.radicand
        return self.radicand

    def __add__(self, other):
        o = self._coerce(other)
        return QuadraticNumber(self.rational + o.rational, self.surd + o.surd, self._join(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.rational, -self.surd, self.radicand)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._join(o)
        a, b, c, e = self.rational, self.surd, o.rational, o.surd
        return QuadraticNumber(a * c + b * e * d, a * e + b * c, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.rational, -self.surd, self.radicand)

    def inverse(self) -> "QuadraticNumber":
        norm = self.rational * self.rational - self.surd * self.surd * self.radicand
        if norm == 0:
            raise ZeroDivisionError("quadratic number has zero norm")
        conj = self.conjugate()
        return QuadraticNumber(conj.rational / norm, conj.surd / norm, self.radicand)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_rational(self) -> bool:
        return self.surd == 0

    def is_zero(self) -> bool:
        return self.rational == 0 and self.surd == 0

    def __str__(self):
        if self.surd == 0:
            return str(self.rational)
        return f"{self.rational} + {self.surd}*sqrt({self.radicand})"


# ---------------------------------------------------------------------------
# High-precision binary floats


def _round_shift(man: int, shift: int) -> int:
    """Round man / 2**shift to nearest (ties away from zero)."""
    if shift <= 0:
        return man << (-shift)
    half = 1 << (shift - 1)
    if man >= 0:
        return (man + half) >> shift
    return -((-man + half) >> shift)


class HPReal:
    """Arbitrary-precision binary float: value = man * 2**exp at prec bits."""

    __slots__ = ("man", "exp", "prec")

    def __init__(self, man: int, exp: int, prec: int, normalized: bool = False):
        if prec < 4:
            raise ValueError("precision too small")
        if not normalized:
            man, exp = self._normalize(man, exp, prec)
        self.man = man
        self.exp = exp
        self.prec = prec

    @staticmethod
    def _normalize(man: int, exp: int, prec: int):
        if man == 0:
            return 0, 0
        bl = man.bit_length() if man > 0 else (-man).bit_length()
        shift = bl - prec
        if shift == 0:
            return man, exp
        man2 = _round_shift(man, shift)
        # rounding can carry into one extra bit
        bl2 = man2.bit_length() if man2 > 0 else (-man2).bit_length()
        if bl2 > prec:
            man2 = _round_shift(man2, bl2 - prec)
            shift += bl2 - prec
        return man2, exp + shift

    @staticmethod
    def from_int(n: int, prec: int) -> "HPReal":
        return HPReal(n, 0, prec)

    @staticmethod
    def from_fraction(fr: Fraction, prec: int) -> "HPReal":
        fr = rat(fr)
        if fr == 0:
            return HPReal(0, 0, prec, normalized=True)
        num, den = fr.numerator, fr.denominator
        shift = prec + 2 + den.bit_length() - abs(num).bit_length()
        if shift < 0:
            shift = 0
        if num >= 0:
            q = ((num << (shift + 1)) + den) // (2 * den)
        else:
            q = -((((-num) << (shift + 1)) + den) // (2 * den))
        return HPReal(q, -shift, prec)

    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp, 1)
        return Fraction(self.man, 1 << (-self.exp))

    def is_zero(self) -> bool:
        return self.man == 0

    def sign(self) -> int:
        return (self.man > 0) - (self.man < 0)

    def __neg__(self):
        return HPReal(-self.man, self.exp, self.prec, normalized=True)

    def __abs__(self):
        return HPReal(abs(self.man), self.exp, self.prec, normalized=True)

    def _binop_prec(self, other: "HPReal") -> int:
        return max(self.prec, other.prec)

    def __add__(self, other: "HPReal") -> "HPReal":
        prec = self._binop_prec(other)
        if self.man == 0:
            return HPReal(other.man, other.exp, prec)
        if other.man == 0:
            return HPReal(self.man, self.exp, prec)
        a, b = self, other
        if a.exp < b.exp:
            a, b = b, a
        gap = a.exp - b.exp
        if gap > prec + 4:
            # b only perturbs beyond working precision; keep a, nudge last bit
            gap = prec + 4
        man = (a.man << gap) + b.man
        return HPReal(man, a.exp - gap, prec)

    def __sub__(self, other: "HPReal") -> "HPReal":
        return self + (-other)

    def __mul__(self, other: "HPReal") -> "HPReal":
        prec = self._binop_prec(other)
        return HPReal(self.man * other.man, self.exp + other.exp, prec)

    def mul_int(self, n: int) -> "HPReal":
        return HPReal(self.man * n, self.exp, self.prec)

    def __truediv__(self, other: "HPReal") -> "HPReal":
        prec = self._binop_prec(other)
        if other.man == 0:
            raise ZeroDivisionError("HPReal division by zero")
        if self.man == 0:
            return HPReal(0, 0, prec, normalized=True)
        shift = prec + 4
        num = self.man << shift
        q = num // other.man  # floor division is fine at guard precision
        return HPReal(q, self.exp - other.exp - shift, prec)

    def compare(self, other: "HPReal") -> int:
        diff = self.to_fraction() - other.to_fraction()
        return (diff > 0) - (diff < 0)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def log2_magnitude(self) -> float:
        """Approximate log2(|value|); -inf for zero."""
        if self.man == 0:
            return float("-inf")
        m = abs(self.man)
        top = m >> max(0, m.bit_length() - 53)
        return math.log2(top) + max(0, m.bit_length() - 53) + self.exp

    def with_prec(self, prec: int) -> "HPReal":
        return HPReal(self.man, self.exp, prec)

    def to_decimal(self, digits: int) -> str:
        """Fixed-point decimal string with the given fractional digits."""
        fr = self.to_fraction()
        sign = "-" if fr < 0 else ""
        fr = abs(fr)
        scaled = fr * 10**digits
        n = scaled.numerator // scaled.denominator
        rem = scaled - n
        if rem * 2 >= 1:
            n += 1
        s = str(n).rjust(digits + 1, "0")
        return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"

    def __repr__(self):
        return f"HPReal({self.to_decimal(min(24, 2 + int(self.prec / LOG2_10)))}..., prec={self.prec})"


def hp_sqrt(v: HPReal) -> HPReal:
    """Square root, error below one unit in the last place."""
    if v.man < 0:
        raise NegativeInput("hp_sqrt of negative value")
    if v.man == 0:
        return HPReal(0, 0, v.prec, normalized=True)
    # scale mantissa so the result carries ~prec+4 bits, exponent even
    shift = v.prec + 4
    e = v.exp - 2 * shift
    man = v.man << (2 * shift)
    if e % 2:
        man <<= 1
        e -= 1
    root = math.isqrt(man)
    return HPReal(root, e // 2, v.prec)


def hp_exp(x: HPReal) -> HPReal:
    """exp(x) by halving reduction plus Taylor summation."""
    prec = x.prec
    if x.man == 0:
        return HPReal(1, 0, prec)
    mag = x.log2_magnitude()
    k = max(0, int(math.ceil(mag)) + 1)
    work = prec + 2 * k + 16
    y = Fraction(x.man, 1) * Fraction(2) ** (x.exp - k) if x.exp - k < 0 else Fraction(x.man << (x.exp - k))
    # Taylor sum of exp(y) with |y| <= 1/2, exact rational until rounding
    term = Fraction(1)
    total = Fraction(1)
    j = 1
    bound = Fraction(1, 1 << (work + 4))
    while abs(term) > bound:
        term = term * y / j
        total += term
        j += 1
    r = HPReal.from_fraction(total, work)
    for _ in range(k):
        r = r * r
    return r.with_prec(prec)


def quadratic_to_hp(v: QuadraticNumber, bits: int) -> HPReal:
    """Evaluate rational + surd*sqrt(radicand) at the requested precision."""
    if bits < 16:
        raise ValueError("bits must be >= 16")
    work = bits + 8
    out = HPReal.from_fraction(v.rational, work)
    if v.surd != 0:
        root = hp_sqrt(HPReal.from_int(v.radicand, work))
        out = out + HPReal.from_fraction(v.surd, work) * root
    return out.with_prec(bits)


def quadratic_to_hp_safe(v: QuadraticNumber, bits: int) -> HPReal:
    """Like quadratic_to_hp but immune to component cancellation: working
    precision grows until the result stands clear of the rounding floor."""
    if v.surd == 0 or v.is_zero():
        return quadratic_to_hp(v, bits)
    mag, _ = quad_mag_sign(v)
    size = max(frac_log2(v.rational), frac_log2(v.surd) + 3)
    extra = max(0, int(math.ceil(size - mag)) + 16)
    return quadratic_to_hp(v, bits + extra).with_prec(bits)


# ---------------------------------------------------------------------------
# pi oracle: Machin-type arctangent formulas with binary splitting


def _arctan_recip_splitting(m: int, terms: int):
    """Exact P,Q,T for sum_{k<terms} of the arctan(1/m) tail series.

    Returns (T, Q) with sum_{k=0}^{terms-1} (-1)^k / ((2k+1) m^(2k)) = T/Q.
    """
    m2 = m * m

    def rec(a: int, b: int):
        if b - a == 1:
            p = -(2 * a + 1)
            q = (2 * a + 3) * m2
            return p, q, q
        c = (a + b) // 2
        p1, q1, t1 = rec(a, c)
        p2, q2, t2 = rec(c, b)
        return p1 * p2, q1 * q2, t1 * q2 + p1 * t2

    _, q, t = rec(0, terms)
    return t, q


def _arctan_recip(m: int, bits: int) -> Fraction:
    """arctan(1/m) as an exact fraction with error < 2**-(bits+4)."""
    terms = int((bits + 8) / (2 * math.log2(m))) + 2
    t, q = _arctan_recip_splitting(m, terms)
    return Fraction(t, q * m)


_PI_CACHE: dict[int, HPReal] = {}


def pi_oracle(digits: int) -> HPReal:
    """pi with absolute error < 10**-digits (Machin formula, binary splitting)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    bits = bits_for_digits(digits) + guard_bits(digits)
    cached = _PI_CACHE.get(bits)
    if cached is None:
        approx = 16 * _arctan_recip(5, bits + 8) - 4 * _arctan_recip(239, bits + 8)
        cached = HPReal.from_fraction(approx, bits)
        _PI_CACHE[bits] = cached
    return cached


def pi_oracle_alt(digits: int) -> HPReal:
    """pi from an independent arctangent decomposition (cross-check only)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    bits = bits_for_digits(digits) + guard_bits(digits)
    approx = (
        24 * _arctan_recip(8, bits + 8)
        + 8 * _arctan_recip(57, bits + 8)
        + 4 * _arctan_recip(239, bits + 8)
    )
    return HPReal.from_fraction(approx, bits)


# ---------------------------------------------------------------------------
# Alternating-series acceleration (Chebyshev-weighted, exact rationals)


def alternating_sum(term, count: int) -> Fraction:
    """Accelerated value of sum_k (-1)^k term(k) from terms 0..count-1.

    Chebyshev-polynomial weighting: for totally monotone term sequences the
    error decays like (3+sqrt(8))**-count, which turns boundary-of-convergence
    alternating series into cheap high-precision evaluations. All arithmetic
    is exact; callers choose count from the digits they need (about 1.31
    digits per term) and should cross-check with a larger count.
    """
    e_prev, e_cur = 2, 6  # (3+sqrt8)^k + (3-sqrt8)^k
    for _ in range(count - 1):
        e_prev, e_cur = e_cur, 6 * e_cur - e_prev
    d = Fraction(e_cur, 2)
    b = Fraction(-1)
    c = -d
    s = Fraction(0)
    for k in range(count):
        c = b - c
        s += c * term(k)
        b *= Fraction(2 * (k + count) * (k - count), (2 * k + 1) * (k + 1))
    return s / d


def alternating_terms_for_digits(digits: int) -> int:
    """Term count giving roughly the requested accelerated digits."""
    return int(math.ceil(digits * math.log(10) / math.log(3 + math.sqrt(8)))) + 12


def alternating_sum_split(term, digits: int, extra_count: int = 0) -> Fraction:
    """Accelerated sum_k (-1)^k term(k) robust to (+-1/2)^k-type components.

    A head of ~3.4*(digits+15) terms is summed exactly, which lets any
    subdominant component with ratio <= 1/2 decay below the target before the
    Chebyshev acceleration handles the smooth tail at full rate. Callers
    should compare runs at different extra_count as a stability check.
    """
    head_len = int(math.ceil(3.4 * (digits + 15)))
    if head_len % 2:
        head_len += 1
    head = Fraction(0)
    sign = 1
    for k in range(head_len):
        head += sign * term(k)
        sign = -sign
    count = alternating_terms_for_digits(digits + 8) + extra_count
    tail = alternating_sum(lambda j: term(head_len + j), count)
    return head + tail


def frac_log2(fr: Fraction) -> float:
    """Approximate log2 |fr|; -inf for zero."""
    if fr == 0:
        return float("-inf")
    num, den = abs(fr.numerator), fr.denominator
    top = num >> max(0, num.bit_length() - 53)
    bot = den >> max(0, den.bit_length() - 53)
    return (
        math.log2(top) + max(0, num.bit_length() - 53)
        - math.log2(bot) - max(0, den.bit_length() - 53)
    )


def quad_mag_sign(v: QuadraticNumber):
    """(log2 magnitude, sign) of a quadratic number, cancellation-safe.

    The two components may dwarf their difference, so evaluation precision
    doubles until the result stands clear of the rounding floor.
    """
    if v.is_zero():
        return float("-inf"), 0
    if v.surd == 0:
        m = frac_log2(v.rational)
        return m, 1 if v.rational > 0 else -1
    size = max(frac_log2(v.rational), frac_log2(v.surd) + 3)
    prec = 128
    while True:
        hp = quadratic_to_hp(v, prec)
        if not hp.is_zero() and hp.log2_magnitude() > size - prec + 24:
            return hp.log2_magnitude(), hp.sign()
        prec *= 2
        if prec > 1 << 22:
            raise ArithmeticError("quadratic magnitude did not stabilize")


# ---------------------------------------------------------------------------
# Recognition of numeric values


def agreed_digits(a: HPReal, b: HPReal, cap: int = 100000) -> int:
    """Largest d >= 0 with |a - b| <= 10**-d (capped by working precision)."""
    diff = abs(a.to_fraction() - b.to_fraction())
    max_meaningful = int(min(a.prec, b.prec) / LOG2_10) - 2
    if diff == 0:
        return min(cap, max(0, max_meaningful))
    d = 0
    scaled = diff
    while scaled <= Fraction(1, 10) and d < cap:
        scaled *= 10
        d += 1
    if scaled > 1:
        return 0
    return min(d, max(0, max_meaningful))


def rationalize(x: HPReal, digits: int) -> Fraction:
    """Recognize x as a rational via continued fractions.

    Accepts a convergent p/q when q is small against the working accuracy and
    p/q matches x to nearly the stated digits; raises RationalizationFailed
    otherwise.
    """
    target = x.to_fraction()
    tol = Fraction(1, 10 ** max(4, digits - 4))
    margin = Fraction(1, 10 ** max(4, digits // 4))
    # continued fraction expansion with convergent tracking; a genuine
    # rational beats the Diophantine floor 1/q^2 by a wide margin
    p_prev, q_prev = 0, 1
    p_cur, q_cur = 1, 0
    a = target
    for _ in range(digits + 32):
        ai = math.floor(a)
        p_prev, p_cur = p_cur, ai * p_cur + p_prev
        q_prev, q_cur = q_cur, ai * q_cur + q_prev
        cand = Fraction(p_cur, q_cur)
        err = abs(cand - target)
        if err <= tol and err * q_cur * q_cur <= margin:
            return cand
        frac_part = a - ai
        if frac_part == 0:
            break
        a = 1 / frac_part
    raise RationalizationFailed(f"no convincing rational at {digits} digits")
