"""Discovery and verification of satellite identities.

A satellite triple (P, Q, R) of integer polynomials makes
sum_{n,k} w(n,k) x^(n+k) [P(x) + k Q(x) + n R(x)] vanish identically for a
given kernel w. Exact discovery solves a homogeneous linear system on series
coefficients; numeric discovery evaluates the three component sums at a
rational point and runs PSLQ, then confirms exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .kernels import BinomialKernel
from .linalg import exact_nullspace, normalize_int_vector
from .numerics import HPReal, bits_for_digits, hp_sqrt, rat
from .poly import poly_trim
from .series import TruncatedSeries


class TruncationTooSmall(ValueError):
    pass


class NoRelationFound(RuntimeError):
    pass


class DivergentSample(ArithmeticError):
    pass


@dataclass(frozen=True)
class SatelliteTriple:
    P: tuple
    Q: tuple
    R: tuple
    kernel_id: str = ""
    nullspace_dim: int = 1

    def as_vector(self, degree: int):
        def pad(p):
            return tuple(p) + (0,) * (degree + 1 - len(p))

        return pad(self.P) + pad(self.Q) + pad(self.R)

    def __str__(self):
        def show(p):
            return "(" + ", ".join(str(c) for c in p) + ")"

        return f"P={show(self.P)} Q={show(self.Q)} R={show(self.R)}"


def _normalize_triple(vec, degree: int, kernel_id: str, dim: int) -> SatelliteTriple:
    ints = normalize_int_vector(vec)
    d1 = degree + 1
    chop = lambda p: tuple(int(c) for c in poly_trim([Fraction(c) for c in p]))
    return SatelliteTriple(
        P=chop(ints[0:d1]),
        Q=chop(ints[d1 : 2 * d1]),
        R=chop(ints[2 * d1 : 3 * d1]),
        kernel_id=kernel_id,
        nullspace_dim=dim,
    )


def satellite_series(kernel: BinomialKernel, truncation: int):
    """The three component series sum w x^(n+k) * {1, k, n} to the order."""
    s0 = [Fraction(0)] * (truncation + 1)
    s1 = [Fraction(0)] * (truncation + 1)
    s2 = [Fraction(0)] * (truncation + 1)
    for n in range(truncation + 1):
        k_lo = max(0, kernel.support.k_min(n))
        k_hi = min(kernel.support.k_max(n), truncation - n)
        for k in range(k_lo, k_hi + 1):
            w = kernel.eval(n, k)
            if w == 0:
                continue
            m = n + k
            s0[m] += w
            s1[m] += k * w
            s2[m] += n * w
    return (
        TruncatedSeries(s0, truncation),
        TruncatedSeries(s1, truncation),
        TruncatedSeries(s2, truncation),
    )


def verify_satellite(kernel: BinomialKernel, triple: SatelliteTriple, truncation: int) -> bool:
    """Exact check that all coefficients up to the truncation vanish."""
    s0, s1, s2 = satellite_series(kernel, truncation)
    combo = (
        s0 * TruncatedSeries.from_poly(triple.P, truncation)
        + s1 * TruncatedSeries.from_poly(triple.Q, truncation)
        + s2 * TruncatedSeries.from_poly(triple.R, truncation)
    )
    return combo.is_zero()


def _lll_reduce(basis):
    """Plain LLL (delta = 3/4) over integer vectors, exact arithmetic."""
    basis = [list(v) for v in basis]
    n = len(basis)

    def dot(u, v):
        return sum(Fraction(a) * b for a, b in zip(u, v))

    def gram(basis):
        star = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            vi = [Fraction(c) for c in basis[i]]
            for j in range(i):
                denom = dot(star[j], star[j])
                mu[i][j] = dot(basis[i], star[j]) / denom if denom else Fraction(0)
                vi = [a - mu[i][j] * b for a, b in zip(vi, star[j])]
            star.append(vi)
        return star, mu

    k = 1
    while k < n:
        star, mu = gram(basis)
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[j])]
                star, mu = gram(basis)
        if dot(star[k], star[k]) >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * dot(
            star[k - 1], star[k - 1]
        ):
            k += 1
        else:
            basis[k], basis[k - 1] = basis[k - 1], basis[k]
            k = max(k - 1, 1)
    return basis


def discover_exact(kernel: BinomialKernel, max_degree: int, truncation: int,
                   kernel_id: str = "") -> SatelliteTriple | None:
    """Solve the coefficient-matching linear system for (P, Q, R) exactly."""
    if truncation < 3 * (max_degree + 1) + 10:
        raise TruncationTooSmall(
            f"truncation {truncation} below {3 * (max_degree + 1) + 10}"
        )
    s0, s1, s2 = satellite_series(kernel, truncation)
    d1 = max_degree + 1
    rows = []
    for m in range(truncation + 1):
        row = []
        for series in (s0, s1, s2):
            for i in range(d1):
                row.append(series[m - i] if m - i >= 0 else Fraction(0))
        rows.append(row)
    basis = exact_nullspace(rows, 3 * d1)
    if not basis:
        return None
    dim = len(basis)
    if dim > 1:
        reduced = _lll_reduce([normalize_int_vector(v) for v in basis])
        vec = min(reduced, key=lambda v: max(abs(int(c)) for c in v))
    else:
        vec = basis[0]
    triple = _normalize_triple(vec, max_degree, kernel_id, dim)
    if not verify_satellite(kernel, triple, truncation + 10):
        return None
    return triple


# ---------------------------------------------------------------------------
# PSLQ integer relation detection

PSLQ_MAX_ITER = 10**4


def _nint(x: HPReal) -> int:
    fr = x.to_fraction()
    return math.floor(fr + Fraction(1, 2))


def pslq(values, digits: int, max_iter: int = PSLQ_MAX_ITER):
    """First integer relation for a vector of HPReal values, or None.

    Standard one-level PSLQ with gamma = 2/sqrt(3); a relation is accepted
    when the corresponding normalized residual drops below 10**(-digits/2).
    """
    for rel in pslq_relations(values, digits, max_iter):
        return rel
    return None


def pslq_relations(values, digits: int, max_iter: int = PSLQ_MAX_ITER):
    """Yield successive integer relation candidates as PSLQ uncovers them.

    With lattices that contain several relations (a rational sample point
    induces exact monomial relations, for instance) the iteration keeps
    running after each hit and yields every new candidate once.
    """
    n = len(values)
    if n < 2:
        raise ValueError("need at least two values")
    prec = max(v.prec for v in values)
    tol_detect = HPReal.from_fraction(Fraction(1, 10 ** (digits // 2)), prec)

    norm = HPReal.from_int(0, prec)
    for v in values:
        norm = norm + v * v
    norm = hp_sqrt(norm)
    if norm.is_zero():
        raise ValueError("zero input vector")
    y = [v / norm for v in values]

    s = [None] * n
    acc = HPReal.from_int(0, prec)
    for k in range(n - 1, -1, -1):
        acc = acc + y[k] * y[k]
        s[k] = hp_sqrt(acc)
    H = [[HPReal.from_int(0, prec) for _ in range(n - 1)] for _ in range(n)]
    for j in range(n - 1):
        H[j][j] = s[j + 1] / s[j]
        for i in range(j + 1, n):
            H[i][j] = -(y[i] * y[j]) / (s[j] * s[j + 1])

    A = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    B = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def reduce_row(i, j_start):
        for j in range(j_start, -1, -1):
            if H[j][j].is_zero():
                continue
            t = _nint(H[i][j] / H[j][j])
            if t == 0:
                continue
            y[j] = y[j] + y[i].mul_int(t)
            for k in range(j + 1):
                H[i][k] = H[i][k] - H[j][k].mul_int(t)
            for k in range(n):
                A[i][k] -= t * A[j][k]
                B[k][j] += t * B[k][i]

    for i in range(1, n):
        reduce_row(i, i - 1)

    gamma = HPReal.from_int(2, prec) / hp_sqrt(HPReal.from_int(3, prec))
    gpow = [HPReal.from_int(1, prec)]
    for _ in range(n - 1):
        gpow.append(gpow[-1] * gamma)

    seen = set()
    for _ in range(max_iter):
        # candidate check: every index whose residual has collapsed
        for i in range(n):
            if abs(y[i]) < tol_detect:
                rel = tuple(B[k][i] for k in range(n))
                if any(rel):
                    key = normalize_int_vector([Fraction(c) for c in rel])
                    if key not in seen:
                        seen.add(key)
                        yield list(rel)
        # select the row with maximal gamma^i |H[i][i]|
        m = max(
            range(n - 1),
            key=lambda i: (gpow[i + 1] * abs(H[i][i])).to_fraction(),
        )
        y[m], y[m + 1] = y[m + 1], y[m]
        H[m], H[m + 1] = H[m + 1], H[m]
        A[m], A[m + 1] = A[m + 1], A[m]
        for k in range(n):
            B[k][m], B[k][m + 1] = B[k][m + 1], B[k][m]
        if m <= n - 3:
            t0 = hp_sqrt(H[m][m] * H[m][m] + H[m][m + 1] * H[m][m + 1])
            if not t0.is_zero():
                t1 = H[m][m] / t0
                t2 = H[m][m + 1] / t0
                for i in range(m, n):
                    t3 = H[i][m]
                    t4 = H[i][m + 1]
                    H[i][m] = t1 * t3 + t2 * t4
                    H[i][m + 1] = t1 * t4 - t2 * t3
        for i in range(m + 1, n):
            reduce_row(i, min(i - 1, m + 1))
        # precision exhaustion: integer coefficients outgrow the working bits
        if max(abs(a) for row in A for a in row) > 1 << (prec - 8):
            return


def _numeric_component_sums(kernel: BinomialKernel, x0: Fraction, digits: int):
    """Exact partial sums of the three component series at a rational point."""
    x0 = rat(x0)
    cutoff = Fraction(1, 10 ** (digits + 15))
    s0 = s1 = s2 = Fraction(0)
    prev_mag = None
    grow_streak = 0
    small_streak = 0
    n = 0
    while True:
        k_lo = max(0, kernel.support.k_min(n))
        k_hi = kernel.support.k_max(n)
        row0 = row1 = row2 = Fraction(0)
        base = x0**n
        for k in range(k_lo, k_hi + 1):
            w = kernel.eval(n, k)
            if w == 0:
                continue
            t = w * base * x0**k
            row0 += t
            row1 += k * t
            row2 += n * t
        s0 += row0
        s1 += row1
        s2 += row2
        mag = abs(row0) + abs(row1) + abs(row2)
        if prev_mag is not None and prev_mag > 0:
            grow_streak = grow_streak + 1 if mag > prev_mag else 0
            if grow_streak >= 12 and n >= 24:
                raise DivergentSample(
                    f"component sums grow at n={n} for x={x0}"
                )
        prev_mag = mag
        small_streak = small_streak + 1 if mag < cutoff else 0
        if small_streak >= 3 and n >= 10:
            break
        if n > 40 * digits:
            raise DivergentSample(f"no convergence within {n} rows at x={x0}")
        n += 1
    return s0, s1, s2


def discover_pslq(kernel: BinomialKernel, max_degree: int, digits: int,
                  sample_point, kernel_id: str = "") -> SatelliteTriple | None:
    """PSLQ-based discovery at a rational sample point, confirmed exactly."""
    if digits < 30 * (max_degree + 1):
        raise NoRelationFound(
            f"precision {digits} below threshold {30 * (max_degree + 1)}"
        )
    x0 = rat(sample_point)
    s0, s1, s2 = _numeric_component_sums(kernel, x0, digits)
    prec = bits_for_digits(digits) + 64
    exact = []
    for s in (s0, s1, s2):
        for i in range(max_degree + 1):
            exact.append(s * x0**i)
    vec = [HPReal.from_fraction(v, prec) for v in exact]
    check_order = 3 * (max_degree + 1) + 20
    for rel in pslq_relations(vec, digits):
        # a rational sample point makes adjacent monomial weights exactly
        # proportional; those artifact relations are exactly zero on the
        # truncated sums and carry no information about the kernel
        if sum(r * v for r, v in zip(rel, exact)) == 0:
            continue
        triple = _normalize_triple([Fraction(c) for c in rel], max_degree, kernel_id, 1)
        if verify_satellite(kernel, triple, check_order):
            return triple
    raise NoRelationFound(f"PSLQ found no confirmed relation at {digits} digits")
