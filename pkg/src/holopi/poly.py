"""Dense univariate polynomials as tuples of Fractions (ascending powers)."""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd

from .numerics import rat

Poly = tuple


def poly(coeffs) -> Poly:
    return poly_trim(tuple(rat(c) for c in coeffs))


def poly_trim(p) -> Poly:
    p = tuple(p)
    n = len(p)
    while n > 0 and p[n - 1] == 0:
        n -= 1
    return p[:n]


def poly_is_zero(p) -> bool:
    return len(poly_trim(p)) == 0


def poly_deg(p) -> int:
    return len(poly_trim(p)) - 1


def poly_add(a, b) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def poly_neg(a) -> Poly:
    return tuple(-c for c in a)


def poly_sub(a, b) -> Poly:
    return poly_add(a, poly_neg(b))


def poly_mul(a, b) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly_trim(out)


def poly_scale(a, s) -> Poly:
    s = rat(s)
    return poly_trim(tuple(c * s for c in a))


def poly_eval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_shift(a, k: int) -> Poly:
    """p(n + k) expanded back into powers of n."""
    out = [Fraction(0)] * len(a)
    for d, c in enumerate(a):
        if c == 0:
            continue
        for j in range(d + 1):
            out[j] += c * comb(d, j) * Fraction(k) ** (d - j)
    return poly_trim(out)


def poly_int_normalize(polys):
    """Scale a family of polynomials to coprime integers, leading sign > 0.

    Returns the rescaled tuple-of-polys; the common rational factor is
    divided out so all coefficients are integers with overall gcd 1 and the
    last nonzero polynomial has a positive leading coefficient.
    """
    denom = 1
    for p in polys:
        for c in p:
            denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [[c.numerator * (denom // c.denominator) for c in p] for p in polys]
    g = 0
    for p in ints:
        for c in p:
            g = gcd(g, c)
    if g == 0:
        return tuple(poly_trim(tuple(Fraction(c) for c in p)) for p in ints)
    sign = 0
    for p in reversed(ints):
        t = poly_trim(tuple(Fraction(c) for c in p))
        if t:
            sign = 1 if t[-1] > 0 else -1
            break
    if sign == 0:
        sign = 1
    g *= sign
    return tuple(poly_trim(tuple(Fraction(c, g) for c in p)) for p in ints)


def poly_str(p, var: str = "n") -> str:
    if not p:
        return "0"
    parts = []
    for d, c in enumerate(p):
        if c == 0:
            continue
        if d == 0:
            parts.append(str(c))
        elif d == 1:
            parts.append(f"{c}*{var}" if c != 1 else var)
        else:
            parts.append(f"{c}*{var}^{d}" if c != 1 else f"{var}^{d}")
    return " + ".join(parts).replace("+ -", "- ")
