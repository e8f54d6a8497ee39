"""Truncated formal power series over exact rationals.

A TruncatedSeries holds coefficients c0..c_order, all Fractions. Arithmetic
results carry the minimum of the operand orders, so an "identity verified to
order N" claim is backed by exact coefficients through x^N. LaurentSlice is
the finite-support two-sided analogue used for Laurent-polynomial comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .numerics import rat


class NonzeroConstantTerm(ValueError):
    """Composition requires the inner series to vanish at 0."""


class NonUnitConstantTerm(ValueError):
    """Fractional powers need constant term 1 (or an exact rational root)."""


class OrderTooSmall(ValueError):
    """A comparison or operation was requested beyond the valid order."""


def _nth_root_exact(fr: Fraction, den: int):
    """Exact den-th root of a positive rational, or None."""
    if fr <= 0:
        return None

    def iroot(n: int):
        if n == 0:
            return 0
        r = round(n ** (1.0 / den))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**den == n:
                return cand
        return None

    a = iroot(fr.numerator)
    b = iroot(fr.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


class TruncatedSeries:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = tuple(rat(c) for c in coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(coeffs) < order + 1:
            coeffs = coeffs + (Fraction(0),) * (order + 1 - len(coeffs))
        self.coeffs = coeffs[: order + 1]
        self.order = order

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int) -> "TruncatedSeries":
        return TruncatedSeries((), order)

    @staticmethod
    def one(order: int) -> "TruncatedSeries":
        return TruncatedSeries((Fraction(1),), order)

    @staticmethod
    def x(order: int) -> "TruncatedSeries":
        return TruncatedSeries((Fraction(0), Fraction(1)), order)

    @staticmethod
    def from_poly(p, order: int) -> "TruncatedSeries":
        return TruncatedSeries(tuple(p), order)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.order:
            raise OrderTooSmall(f"coefficient {n} beyond valid order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderTooSmall(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            c = list(self.coeffs)
            c[0] += other
            return TruncatedSeries(c, self.order)
        order = min(self.order, other.order)
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), order
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = rat(other)
            return TruncatedSeries(tuple(c * s for c in self.coeffs), self.order)
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            ci = self.coeffs[i]
            if ci == 0:
                continue
            for j in range(order + 1 - i):
                cj = other.coeffs[j]
                if cj != 0:
                    out[i + j] += ci * cj
        return TruncatedSeries(out, order)

    __rmul__ = __mul__

    def mul_xpow(self, k: int) -> "TruncatedSeries":
        """Multiply by x**k; coefficients above the order fall off the end."""
        if k == 0:
            return self
        return TruncatedSeries((Fraction(0),) * k + self.coeffs, self.order)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        if inner.coeffs[0] != 0:
            raise NonzeroConstantTerm("inner series must have zero constant term")
        order = self.order
        inner = inner.truncate(min(inner.order, order)) if inner.order > order else inner
        if inner.order < order:
            raise OrderTooSmall(
                f"inner order {inner.order} below outer order {order}"
            )
        acc = TruncatedSeries.zero(order)
        for c in reversed(self.coeffs):
            acc = acc * inner
            if c != 0:
                acc = acc + c
        return acc

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise NonUnitConstantTerm("series has no inverse: constant term 0")
        out = [Fraction(0)] * (self.order + 1)
        out[0] = 1 / c0
        for n in range(1, self.order + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                ak = self.coeffs[k]
                if ak != 0:
                    s += ak * out[n - k]
            out[n] = -s / c0
        return TruncatedSeries(out, self.order)

    def pow_rational(self, num: int, den: int = 1) -> "TruncatedSeries":
        """self**(num/den), exact to the truncation order."""
        if den < 1:
            raise ValueError("denominator must be positive")
        g = gcd(abs(num), den) if num else den
        if g > 1:
            num //= g
            den //= g
        if den == 1:
            return self._pow_int(num)
        c0 = self.coeffs[0]
        if c0 != 1:
            root = _nth_root_exact(c0, den)
            if root is None:
                raise NonUnitConstantTerm(
                    f"constant term {c0} has no exact rational {den}-th root"
                )
            scaled = self * (1 / c0)
            return scaled._fractional_root(den)._pow_int(num) * root**num
        return self._fractional_root(den)._pow_int(num)

    def __pow__(self, e: int) -> "TruncatedSeries":
        if not isinstance(e, int):
            return NotImplemented
        return self._pow_int(e)

    def _pow_int(self, e: int) -> "TruncatedSeries":
        if e == 0:
            return TruncatedSeries.one(self.order)
        base = self if e > 0 else self.inverse()
        e = abs(e)
        acc = TruncatedSeries.one(self.order)
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def _fractional_root(self, den: int) -> "TruncatedSeries":
        """self**(1/den) for constant term exactly 1."""
        alpha = Fraction(1, den)
        n_max = self.order
        out = [Fraction(0)] * (n_max + 1)
        out[0] = Fraction(1)
        for n in range(1, n_max + 1):
            s = Fraction(0)
            for k in range(1, n + 1):
                sk = self.coeffs[k]
                if sk != 0:
                    s += (k * (alpha + 1) - n) * sk * out[n - k]
            out[n] = s / n
        return TruncatedSeries(out, n_max)

    def sqrt(self) -> "TruncatedSeries":
        return self.pow_rational(1, 2)

    def apply_D(self) -> "TruncatedSeries":
        """x d/dx: coefficient n*c_n."""
        return TruncatedSeries(
            tuple(n * c for n, c in enumerate(self.coeffs)), self.order
        )

    def derivative(self) -> "TruncatedSeries":
        """d/dx; the result is guaranteed only to order-1."""
        if self.order == 0:
            return TruncatedSeries.zero(0)
        return TruncatedSeries(
            tuple((n + 1) * self.coeffs[n + 1] for n in range(self.order)),
            self.order - 1,
        )

    # -- comparisons -------------------------------------------------------

    def eq_to_order(self, other: "TruncatedSeries", order: int) -> bool:
        if self.order < order or other.order < order:
            raise OrderTooSmall(
                f"comparison to order {order} beyond valid orders "
                f"{self.order}/{other.order}"
            )
        return self.coeffs[: order + 1] == other.coeffs[: order + 1]

    def first_mismatch(self, other: "TruncatedSeries", order: int):
        if self.order < order or other.order < order:
            raise OrderTooSmall("comparison beyond valid order")
        for n in range(order + 1):
            if self.coeffs[n] != other.coeffs[n]:
                return n
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self.coeffs[: order + 1] == other.coeffs[: order + 1]

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[: min(6, self.order + 1)])
        return f"TruncatedSeries([{head}, ...], order={self.order})"


# module-level operation aliases matching the catalog vocabulary


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    return outer.compose(inner)


def series_pow_rational(base: TruncatedSeries, num: int, den: int) -> TruncatedSeries:
    return base.pow_rational(num, den)


def apply_D(s: TruncatedSeries) -> TruncatedSeries:
    return s.apply_D()


class LaurentSlice:
    """Finitely supported Laurent polynomial with exact coefficients."""

    __slots__ = ("min_exp", "coeffs")

    def __init__(self, min_exp: int, coeffs):
        coeffs = [rat(c) for c in coeffs]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            min_exp += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.min_exp = min_exp if coeffs else 0
        self.coeffs = tuple(coeffs)

    @staticmethod
    def from_terms(terms: dict) -> "LaurentSlice":
        if not terms:
            return LaurentSlice(0, ())
        lo = min(terms)
        hi = max(terms)
        return LaurentSlice(lo, [terms.get(e, Fraction(0)) for e in range(lo, hi + 1)])

    def terms(self) -> dict:
        return {
            self.min_exp + i: c for i, c in enumerate(self.coeffs) if c != 0
        }

    def __eq__(self, other):
        if not isinstance(other, LaurentSlice):
            return NotImplemented
        return self.terms() == other.terms()

    def __hash__(self):
        return hash(tuple(sorted(self.terms().items())))

    def __repr__(self):
        body = " + ".join(f"{c}*y^{e}" for e, c in sorted(self.terms().items()))
        return f"LaurentSlice({body or '0'})"
