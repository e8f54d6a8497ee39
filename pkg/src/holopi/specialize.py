"""Specialization engine: expanding double series under z = phi(x) and
verifying series/translation identities and the bivariate Legendre
transformations.

A DoubleSeriesSpec describes one side of an identity as

    scalar * x^shift * sum_n outer(n) * sign^n * geom^n * x^(alpha*n)
           * prod_i p_i(x)^(c_i*n + e_i) * sum_k w(n,k) * g^k * x^(beta*k)

with e_i allowed to be half-integers (handled as exact series roots). The
substitution z = phi(x) of the source material is always decomposed into the
sign/geom/x-power/polynomial-power factors above. Multiplier pairs (A, B)
weight terms by (A(x)*n + B(x)) and are how translation identities carry
their free parameters.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .kernels import BinomialKernel, SequenceDef
from .numerics import HPReal, bits_for_digits, rat
from .series import LaurentSlice, TruncatedSeries


class UnboundedContribution(ValueError):
    """The specialization does not force growing x-degree per n."""


class DivergentParameter(ValueError):
    """Numeric verification requested outside the convergence region."""


class UnknownId(KeyError):
    pass


class DoubleSeriesSpec:
    def __init__(self, outer=None, sign: int = 1, geom=1, xpow_n: int = 1,
                 xshift: int = 0, scalar=1, prefactors=(), inner=None, mult=None):
        self.outer = outer  # BinomialKernel (evaluated at k=0) or SequenceDef
        self.sign = sign
        self.geom = rat(geom)
        self.xpow_n = xpow_n
        self.xshift = xshift
        self.scalar = rat(scalar)
        # each prefactor: (poly coefficients, per-n integer exponent, constant Fraction exponent)
        self.prefactors = tuple(
            (tuple(rat(c) for c in p), int(cn), rat(ce)) for p, cn, ce in prefactors
        )
        self.inner = inner  # (BinomialKernel, xpow_k, geom_k) or None
        self.mult = mult  # (expr_A, expr_B) or None

    # -- bookkeeping ---------------------------------------------------------

    def _outer_weight(self, n: int) -> Fraction:
        if self.outer is None:
            return Fraction(1)
        if isinstance(self.outer, SequenceDef):
            return self.outer.term(n)
        return self.outer.eval(n, 0)

    def _min_degree_slope(self) -> Fraction:
        slope = Fraction(self.xpow_n)
        if self.inner is not None:
            kernel, xpow_k, _ = self.inner
            slope += xpow_k * max(Fraction(0), kernel.support.lo_a)
        return slope

    def _min_degree(self, n: int) -> int:
        d = self.xshift + self.xpow_n * n
        if self.inner is not None:
            kernel, xpow_k, _ = self.inner
            d += xpow_k * max(0, kernel.support.k_min(n))
        return d

    def n_bound(self, order: int) -> int:
        """Least N with min-degree(n) > order for all n > N."""
        if self._min_degree_slope() <= 0:
            raise UnboundedContribution(
                "z(0) != 0 and kernel support does not force growing degree"
            )
        n = 0
        while self._min_degree(n) <= order:
            n += 1
        return n - 1

    # -- expansion -----------------------------------------------------------

    def expand(self, order: int, params=None) -> TruncatedSeries:
        n_max = self.n_bound(order)
        plain = [Fraction(0)] * (order + 1)
        nweighted = [Fraction(0)] * (order + 1) if self.mult else None

        # incremental prefactor state: start = prod p_i^(e_i), step = prod p_i^(c_i)
        pref = TruncatedSeries.one(order)
        step = TruncatedSeries.one(order)
        have_pref = bool(self.prefactors)
        if have_pref:
            for p, cn, ce in self.prefactors:
                base = TruncatedSeries.from_poly(p, order)
                if ce != 0:
                    pref = pref * base.pow_rational(ce.numerator, ce.denominator)
                if cn != 0:
                    step = step * base.pow_rational(cn, 1)

        weight = self.scalar
        for n in range(n_max + 1):
            w = weight * self._outer_weight(n)
            if w != 0:
                base_deg = self.xshift + self.xpow_n * n
                budget = order - base_deg
                # inner polynomial in x, truncated to the remaining budget
                if self.inner is not None:
                    kernel, xpow_k, geom_k = self.inner
                    k_lo = max(0, kernel.support.k_min(n))
                    k_hi = kernel.support.k_max(n)
                    if xpow_k > 0:
                        k_hi = min(k_hi, k_lo + budget // xpow_k)
                    inner_coeffs = {}
                    gk = geom_k ** k_lo if geom_k != 1 else Fraction(1)
                    for k in range(k_lo, k_hi + 1):
                        v = kernel.eval(n, k)
                        if v != 0:
                            inner_coeffs[xpow_k * k] = v * gk
                        if geom_k != 1:
                            gk *= geom_k
                else:
                    inner_coeffs = {0: Fraction(1)}
                if have_pref:
                    # contribution = w * x^base_deg * pref * inner
                    for j in range(min(budget, pref.order) + 1):
                        pj = pref.coeffs[j]
                        if pj == 0:
                            continue
                        for deg, v in inner_coeffs.items():
                            pos = base_deg + j + deg
                            if pos <= order:
                                contrib = w * pj * v
                                plain[pos] += contrib
                                if nweighted is not None:
                                    nweighted[pos] += n * contrib
                else:
                    for deg, v in inner_coeffs.items():
                        pos = base_deg + deg
                        if pos <= order:
                            contrib = w * v
                            plain[pos] += contrib
                            if nweighted is not None:
                                nweighted[pos] += n * contrib
            weight = weight * self.sign * self.geom
            if have_pref and n < n_max:
                pref = pref * step

        total = TruncatedSeries(plain, order)
        if self.mult is None:
            return total
        expr_a, expr_b = self.mult
        a_series = eval_expr(expr_a, order, params)
        b_series = eval_expr(expr_b, order, params)
        return a_series * TruncatedSeries(nweighted, order) + b_series * total


def expand_double(spec: DoubleSeriesSpec, order: int, params=None) -> TruncatedSeries:
    return spec.expand(order, params)


# ---------------------------------------------------------------------------
# Expression trees over series


def eval_expr(node, order: int, params=None) -> TruncatedSeries:
    """Evaluate an expression tree to a TruncatedSeries.

    Nodes: {"poly": [...]}, {"rat": r}, {"param": name}, {"add": [...]},
    {"mul": [...]}, {"neg": e}, {"pow": [e, num, den]}, {"D": e},
    {"side": DoubleSeriesSpec or dict}.
    """
    params = params or {}
    if isinstance(node, DoubleSeriesSpec):
        return node.expand(order, params)
    if not isinstance(node, dict) or len(node) != 1:
        raise ValueError(f"bad expression node: {node!r}")
    (op, payload), = node.items()
    if op == "poly":
        return TruncatedSeries.from_poly([rat(c) for c in payload], order)
    if op == "rat":
        return TruncatedSeries.from_poly([rat(payload)], order)
    if op == "param":
        if payload not in params:
            raise ValueError(f"unbound parameter {payload!r}")
        return TruncatedSeries.from_poly([rat(params[payload])], order)
    if op == "add":
        acc = TruncatedSeries.zero(order)
        for sub in payload:
            acc = acc + eval_expr(sub, order, params)
        return acc
    if op == "mul":
        acc = TruncatedSeries.one(order)
        for sub in payload:
            acc = acc * eval_expr(sub, order, params)
        return acc
    if op == "neg":
        return -eval_expr(payload, order, params)
    if op == "pow":
        base, num, den = payload
        return eval_expr(base, order, params).pow_rational(int(num), int(den))
    if op == "D":
        return eval_expr(payload, order, params).apply_D()
    if op == "side":
        return payload.expand(order, params) if isinstance(payload, DoubleSeriesSpec) \
            else _side_from_json(payload).expand(order, params)
    raise ValueError(f"unknown expression op {op!r}")


def _side_from_json(payload):
    from . import catalog

    return catalog.side_from_json(payload)


# ---------------------------------------------------------------------------
# Identity verification entry points (catalog-driven)


def verify_series_identity(identity_id: str, order: int | None = None) -> bool:
    from . import catalog

    rec = catalog.identity(identity_id)
    if rec.kind != "series":
        raise UnknownId(f"{identity_id} is not a series identity")
    n = order or rec.default_order
    lhs = eval_expr(rec.payload["lhs"], n)
    rhs = eval_expr(rec.payload["rhs"], n)
    return lhs.eq_to_order(rhs, n)


def verify_translation(identity_id: str, order: int | None = None, pairs=None) -> bool:
    """Check a translation rule on its parameter basis (or explicit pairs).

    The multipliers are affine in the free parameters, so passing on the
    basis assignments certifies every parameter choice.
    """
    from . import catalog

    rec = catalog.identity(identity_id)
    if rec.kind != "translation":
        raise UnknownId(f"{identity_id} is not a translation identity")
    n = order or rec.default_order
    names = rec.payload["params"]
    assignments = pairs if pairs is not None else rec.payload["basis"]
    lhs_side = rec.payload["lhs"]
    rhs_side = rec.payload["rhs"]
    for values in assignments:
        bound = dict(zip(names, [rat(v) for v in values]))
        lhs = lhs_side.expand(n, bound)
        rhs = rhs_side.expand(n, bound)
        if not lhs.eq_to_order(rhs, n):
            return False
    return True


# ---------------------------------------------------------------------------
# Legendre polynomials and the quadratic-transformation checks


def legendre_poly(m: int):
    """P_m as exact coefficients in its argument, via the binomial form
    P_m(u) = sum_k C(m,k) C(m+k,k) ((u-1)/2)^k."""
    out = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        c = Fraction(comb(m, k) * comb(m + k, k), 2**k)
        # expand (u-1)^k
        for j in range(k + 1):
            out[j] += c * comb(k, j) * (-1) ** (k - j)
    return out


def legendre_value(m: int, u: Fraction) -> Fraction:
    u = rat(u)
    acc = Fraction(0)
    for k in range(m + 1):
        acc += comb(m, k) * comb(m + k, k) * ((u - 1) / 2) ** k
    return acc


def whipple_sides(n: int):
    """Both sides of the quadratic transformation for index n, as exact
    polynomial coefficient lists in y (denominators cleared identically)."""
    lhs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        lhs[k] = Fraction(comb(2 * k, k) ** 2 * comb(2 * n - 2 * k, n - k) ** 2, comb(n, k))
    rhs = [Fraction(0)] * (n + 1)
    for k in range((n + 1) // 2, n + 1):
        c = comb(k, n - k) * comb(2 * k, k) ** 2
        base = Fraction((-1) ** (n + k) * 16 ** (n - k))
        # y^(n-k) * (1+y)^(2k-n)
        for j in range(2 * k - n + 1):
            pos = (n - k) + j
            if pos <= n:
                rhs[pos] += c * base * comb(2 * k - n, j)
    return lhs, rhs


def verify_ratfun_identity(identity_id: str, n_max: int = 15) -> bool:
    if identity_id != "whipple-quadratic":
        raise UnknownId(identity_id)
    for n in range(n_max + 1):
        lhs, rhs = whipple_sides(n)
        if lhs != rhs:
            return False
    return True


_TRANS1_KERNEL = BinomialKernel(
    factors=[((1, -1, 0), (0, 1, 0)), ((0, 2, 0), (0, 1, 0)),
             ((2, -2, 0), (1, -1, 0)), ((2, -2, 0), (1, -1, 0))],
    support=None,
)


def expand_trans1(z_order: int):
    """Laurent slices in y of both sides of the first factorization, per z^m.

    On the left the z-degree of the (n, k) term is n - k with k = n - m and
    m <= n <= 2m, so each slice is a finite exact sum; the right side is
    C(2m,m)^2 P_m((y^2+1)/(2y)) expanded as a Laurent polynomial.
    """
    lhs_slices = []
    rhs_slices = []
    for m in range(z_order + 1):
        terms: dict[int, Fraction] = {}
        for n in range(m, 2 * m + 1):
            k = n - m
            w = _TRANS1_KERNEL.eval(n, k)
            if w == 0:
                continue
            # (z/y)^n * (y (y^2-1)/(4z))^k  ->  z^m y^(k-n) (y^2-1)^k / 4^k
            c = w / Fraction(4) ** k
            for j in range(k + 1):
                e = (k - n) + 2 * j
                terms[e] = terms.get(e, Fraction(0)) + c * comb(k, j) * (-1) ** (k - j)
        lhs_slices.append(LaurentSlice.from_terms(terms))

        pm = legendre_poly(m)
        rterms: dict[int, Fraction] = {}
        scale = Fraction(comb(2 * m, m) ** 2)
        # ((y^2+1)/(2y))^k expands into exponents k-2j
        for k, c in enumerate(pm):
            if c == 0:
                continue
            cc = scale * c / Fraction(2) ** k
            for j in range(k + 1):
                e = k - 2 * j
                rterms[e] = rterms.get(e, Fraction(0)) + cc * comb(k, j)
        rhs_slices.append(LaurentSlice.from_terms(rterms))
    return lhs_slices, rhs_slices


def verify_trans1(z_order: int = 12) -> bool:
    lhs, rhs = expand_trans1(z_order)
    return all(a == b for a, b in zip(lhs, rhs))


def verify_trans2_numeric(y, z_order: int, digits: int) -> bool:
    """Sample the second factorization at rational y, slice by slice in z.

    Each z^k coefficient on the left is an infinite n-sum evaluated to the
    requested precision; the right side is y C(2k,k)^2 P_2k(y), exact.
    """
    y = rat(y)
    if y == 0:
        raise DivergentParameter("y must be nonzero")
    w = (y * y - 1) / (4 * y * y)
    if abs(w) >= Fraction(1, 4):
        raise DivergentParameter(f"|w| = {abs(w)} >= 1/4 at y = {y}")
    eps = Fraction(1, 10 ** (digits + 10))
    ratio_bound = (1 + 4 * abs(w)) / 2
    for k in range(z_order + 1):
        acc = Fraction(0)
        n = k
        term_scale = Fraction(4, y * y - 1) ** k * comb(2 * k, k)
        while True:
            t = comb(2 * n, n) * Fraction(comb(n, k)) ** 2 * w**n
            acc += t
            n += 1
            if n > k + 10 and abs(t) * term_scale < eps:
                break
            if n > 200 * (digits + 10):
                raise DivergentParameter("no convergence in the n-sum")
        lhs = acc * term_scale
        tail = abs(t) * term_scale * ratio_bound / (1 - ratio_bound)
        rhs = y * comb(2 * k, k) ** 2 * legendre_value(2 * k, y)
        if abs(lhs - rhs) > Fraction(1, 10**digits) + tail:
            return False
    return True
