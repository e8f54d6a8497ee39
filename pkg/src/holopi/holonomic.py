"""Linear ODEs with polynomial coefficients and P-recurrences.

Covers the three conversions this project needs: turning an ODE into the
recurrence its series solutions satisfy, applying an ODE to a truncated
series (annihilation check), and guessing a recurrence from exact terms by
nullspace computation over the rationals.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .linalg import exact_nullspace
from .numerics import rat
from .poly import (
    Poly,
    poly,
    poly_add,
    poly_eval,
    poly_int_normalize,
    poly_is_zero,
    poly_mul,
    poly_shift,
    poly_str,
    poly_trim,
)
from .series import OrderTooSmall, TruncatedSeries


class LeadingCoefficientZero(ArithmeticError):
    """Forward recursion hit a vanishing leading polynomial."""


class InsufficientTerms(ValueError):
    """Too few terms for the requested guessing window."""


class NoClosedForm(ValueError):
    pass


class NoRecurrence(ValueError):
    pass


class PRecurrence:
    """sum_r coeffs[r](m) * t(m+r) = 0 for every m >= valid_from.

    Indices below zero are treated as zero terms, which is how short initial
    segments (a single t(0), say) can still start a higher-order recurrence.
    """

    def __init__(self, coeffs, initial, valid_from: int = 0):
        coeffs = tuple(poly_trim(tuple(rat(c) for c in p)) for p in coeffs)
        while coeffs and poly_is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise ValueError("recurrence needs order >= 1")
        self.coeffs = coeffs
        self.order = len(coeffs) - 1
        self.initial = tuple(rat(c) for c in initial)
        self.valid_from = valid_from
        self._terms = list(self.initial)
        self._lock = threading.Lock()

    def term(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        with self._lock:
            while len(self._terms) <= n:
                j = len(self._terms)
                m = j - self.order
                if m < self.valid_from:
                    raise NoRecurrence(
                        f"term {j} not determined: recurrence valid from "
                        f"m={self.valid_from} and only {len(self.initial)} "
                        "initial values given"
                    )
                lead = poly_eval(self.coeffs[self.order], m)
                if lead == 0:
                    raise LeadingCoefficientZero(
                        f"leading coefficient vanishes at m={m}"
                    )
                acc = Fraction(0)
                for r in range(self.order):
                    idx = m + r
                    if idx < 0:
                        continue
                    c = poly_eval(self.coeffs[r], m)
                    if c != 0:
                        acc += c * self._terms[idx]
                self._terms.append(-acc / lead)
            return self._terms[n]

    def annihilates(self, terms, start: int = 0) -> bool:
        """Exactly checks the recurrence against a list of terms."""
        for m in range(start, len(terms) - self.order):
            acc = Fraction(0)
            for r, p in enumerate(self.coeffs):
                acc += poly_eval(p, m) * terms[m + r]
            if acc != 0:
                return False
        return True

    def normalized(self) -> "PRecurrence":
        coeffs = poly_int_normalize(self.coeffs)
        return PRecurrence(coeffs, self.initial, self.valid_from)

    def proportional_to(self, other: "PRecurrence") -> bool:
        """True when the two recurrences agree up to an overall content factor."""
        if self.order != other.order:
            return False
        for i in range(self.order + 1):
            for j in range(i + 1, self.order + 1):
                lhs = poly_mul(self.coeffs[i], other.coeffs[j])
                rhs = poly_mul(self.coeffs[j], other.coeffs[i])
                if poly_trim(lhs) != poly_trim(rhs):
                    return False
        return True

    def __repr__(self):
        body = " + ".join(
            f"[{poly_str(p)}]*t(m+{r})" for r, p in enumerate(self.coeffs)
        )
        return f"PRecurrence({body} = 0, initial={list(self.initial)})"


def precurrence_from_offsets(terms, initial, var_shift_hint=None) -> PRecurrence:
    """Build from the natural written form: sum over (offset, poly in n).

    Each entry is (offset, poly) meaning poly(n) * t(n + offset); the relation
    is assumed valid for every n >= 0 with t(negative) = 0.
    """
    offsets = [o for o, _ in terms]
    o_min = min(offsets)
    o_max = max(offsets)
    coeffs = [()] * (o_max - o_min + 1)
    for o, p in terms:
        shifted = poly_shift(poly(p), -o_min)
        coeffs[o - o_min] = poly_add(coeffs[o - o_min], shifted)
    return PRecurrence(coeffs, initial, valid_from=o_min)


class LODE:
    """sum_i coeffs[i](x) * y^(i) = rhs(x) * y, normalized to homogeneous form."""

    def __init__(self, coeffs, rhs=()):
        coeffs = [poly(p) for p in coeffs]
        rhs = poly(rhs)
        if rhs:
            coeffs[0] = poly_add(coeffs[0], tuple(-c for c in rhs))
        while coeffs and poly_is_zero(coeffs[-1]):
            coeffs.pop()
        if not coeffs:
            raise ValueError("zero operator")
        self.coeffs = tuple(coeffs)
        self.order = len(self.coeffs) - 1
        self.max_degree = max((len(p) - 1 for p in self.coeffs if p), default=0)

    def __repr__(self):
        body = " + ".join(
            f"[{poly_str(p, 'x')}]*y^({i})" for i, p in enumerate(self.coeffs)
        )
        return f"LODE({body} = 0)"


def ode_to_recurrence(ode: LODE) -> PRecurrence:
    """Recurrence satisfied by coefficient sequences of series solutions.

    Substituting sum c_n x^n turns x^j y^(i) into falling-factorial weights on
    c at shifted indices; collecting x^N gives a polynomial recurrence, which
    is then renormalized to coprime integer coefficients.
    """
    shifts = {}
    for i, p in enumerate(ode.coeffs):
        for j, a in enumerate(p):
            if a == 0:
                continue
            delta = i - j
            # falling factorial (N + delta)(N + delta - 1)...(N + delta - i + 1)
            ff: Poly = (a,)
            for u in range(i):
                ff = poly_mul(ff, (Fraction(delta - u), Fraction(1)))
            shifts[delta] = poly_add(shifts.get(delta, ()), ff)
    shifts = {d: poly_trim(p) for d, p in shifts.items() if not poly_is_zero(p)}
    if not shifts:
        raise ValueError("operator annihilates everything")
    d_min = min(shifts)
    d_max = max(shifts)
    coeffs = [()] * (d_max - d_min + 1)
    for d, p in shifts.items():
        coeffs[d - d_min] = poly_shift(p, -d_min)
    # strip trailing zero coefficient polynomials, shifting the base index
    valid_from = d_min
    while coeffs and poly_is_zero(coeffs[0]):
        coeffs = coeffs[1:]
        coeffs = [poly_shift(p, 1) for p in coeffs]
        valid_from += 1
    coeffs = poly_int_normalize(coeffs)
    return PRecurrence(coeffs, (), valid_from=valid_from)


def apply_ode(ode: LODE, s: TruncatedSeries) -> TruncatedSeries:
    """L[s], truncated to the provably valid order; zero output certifies
    annihilation to that order."""
    needed = ode.order + ode.max_degree + 5
    if s.order < needed:
        raise OrderTooSmall(
            f"series order {s.order} below required {needed} for this operator"
        )
    valid = s.order - ode.order - ode.max_degree
    total = TruncatedSeries.zero(valid)
    deriv = s
    for i, p in enumerate(ode.coeffs):
        if i > 0:
            deriv = deriv.derivative()
        if poly_is_zero(p):
            continue
        term = deriv.truncate(valid) if deriv.order > valid else deriv
        piece = TruncatedSeries.zero(valid)
        for j, a in enumerate(p):
            if a != 0:
                piece = piece + (term * a).mul_xpow(j)
        total = total + piece
    return total


def guess_recurrence(terms, max_order: int, max_degree: int):
    """Minimal (order, then degree) recurrence annihilating all terms, or None.

    The linear system is solved exactly; candidates are normalized to coprime
    integer coefficients with positive leading sign and re-checked against
    every supplied term before being returned.
    """
    required = (max_order + 1) * (max_degree + 1) + max_order + 10
    if len(terms) < required:
        raise InsufficientTerms(
            f"need at least {required} terms, got {len(terms)}"
        )
    terms = [rat(t) for t in terms]
    for order in range(1, max_order + 1):
        for degree in range(0, max_degree + 1):
            ncols = (order + 1) * (degree + 1)
            rows = []
            for m in range(len(terms) - order):
                row = []
                for r in range(order + 1):
                    t = terms[m + r]
                    cell = Fraction(1)
                    for d in range(degree + 1):
                        row.append(t * cell)
                        cell *= m
                rows.append(row)
            basis = exact_nullspace(rows, ncols)
            if not basis:
                continue
            candidates = []
            for vec in basis:
                coeffs = []
                for r in range(order + 1):
                    coeffs.append(poly_trim(vec[r * (degree + 1) : (r + 1) * (degree + 1)]))
                if poly_is_zero(coeffs[-1]):
                    continue
                coeffs = poly_int_normalize(coeffs)
                rec = PRecurrence(coeffs, terms[:order], valid_from=0)
                if rec.order == order and rec.annihilates(terms):
                    candidates.append(rec)
            if candidates:
                return min(
                    candidates,
                    key=lambda r: max(
                        abs(c.numerator) for p in r.coeffs for c in p
                    ),
                )
    return None
