"""High-precision evaluation and certification of the 1/pi series and the
numeric double-sum equalities.

Terms are exact (Fraction, or quadratic surds for the algebraic rows), so
partial sums accumulate no rounding; a single conversion to HPReal happens
at the end, or once per row for double sums. Boundary-of-convergence
alternating rows go through the exact Chebyshev-weighted accelerator.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .holonomic import guess_recurrence
from .kernels import BinomialKernel, SequenceDef
from .numerics import (
    HPReal,
    QuadraticNumber,
    agreed_digits,
    alternating_sum_split,
    bits_for_digits,
    frac_log2,
    hp_sqrt,
    pi_oracle,
    quad_mag_sign,
    quadratic_to_hp,
    quadratic_to_hp_safe,
    rat,
)

RATIO_GATE = Fraction(63, 64)
SCAN_TERMS = 200


class DivergenceDetected(ArithmeticError):
    pass


def _mag_log2(value) -> float:
    if isinstance(value, QuadraticNumber):
        return quad_mag_sign(value)[0]
    return frac_log2(value)


def _sign_of(value) -> int:
    if isinstance(value, QuadraticNumber):
        return quad_mag_sign(value)[1]
    return (value > 0) - (value < 0)


@dataclass
class PiSeriesSpec:
    seq: SequenceDef
    mult_a: QuadraticNumber
    mult_b: QuadraticNumber
    x: QuadraticNumber
    prefactor_squared: QuadraticNumber
    target: QuadraticNumber | None = None
    divergent_expected: bool = False
    id: str = ""
    paper_tag: str = ""

    def term(self, n: int):
        """Exact n-th term (A n + B) t(n) x^n, rational when possible."""
        t = self.seq.term(n)
        if self.x.is_rational() and self.mult_a.is_rational() and self.mult_b.is_rational():
            return (
                (self.mult_a.rational * n + self.mult_b.rational)
                * t
                * self.x.rational**n
            )
        xq = self.x
        mult = self.mult_a * n + self.mult_b
        acc = QuadraticNumber.from_rational(1)
        for _ in range(n):
            acc = acc * xq
        return mult * acc * t


def spec_from_record(rec) -> PiSeriesSpec:
    p = rec.payload
    return PiSeriesSpec(
        seq=_sequence(p["seq"]),
        mult_a=p["A"],
        mult_b=p["B"],
        x=p["x"],
        prefactor_squared=p["prefactorSquared"],
        target=p.get("target"),
        divergent_expected=bool(p.get("divergent", False)),
        id=rec.id,
        paper_tag=rec.paper_tag,
    )


def _sequence(seq_id: str) -> SequenceDef:
    from . import catalog

    return catalog.sequence(seq_id)


def _scan_regime(term_fn, scan: int = SCAN_TERMS):
    """Classify a series from its leading terms.

    Returns ("geometric", None) when the tail ratio sits safely below the
    gate; ("alternating-boundary", mags) for conditionally convergent
    sign-alternating tails; raises DivergenceDetected otherwise.
    """
    mags = []
    signs = []
    for n in range(scan + 1):
        t = term_fn(n)
        mags.append(_mag_log2(t))
        signs.append(_sign_of(t))
    tail = range(scan - 30, scan)
    gate = float(math.log2(63 / 64))
    ratios_ok = all(mags[n + 1] - mags[n] < gate for n in tail)
    if ratios_ok:
        return "geometric", mags
    growing = sum(1 for n in tail if mags[n + 1] > mags[n])
    alternating = all(
        signs[n] != 0 and signs[n] == -signs[n + 1] for n in tail
    )
    decreasing = all(mags[n + 1] <= mags[n] + 1e-12 for n in tail)
    if alternating and decreasing and growing == 0:
        return "alternating-boundary", mags
    raise DivergenceDetected(
        "terms neither decay geometrically nor form a decreasing "
        "alternating tail"
    )


def _sum_geometric(term_fn, digits: int, quadratic: bool, prec: int):
    """Exact accumulation with the documented stopping rule and tail bound:
    stop at the first n >= 20 with |term| below threshold and the last five
    ratios under 63/64."""
    cutoff = -(digits + 12) * math.log2(10)
    acc = QuadraticNumber.from_rational(0) if quadratic else Fraction(0)
    prev_mag = None
    small = 0
    ratio_ok_streak = 0
    n = 0
    while True:
        t = term_fn(n)
        acc = acc + t
        mag = _mag_log2(t)
        if prev_mag is not None and mag < prev_mag + math.log2(63 / 64):
            ratio_ok_streak += 1
        else:
            ratio_ok_streak = 0
        prev_mag = mag
        small = small + 1 if mag < cutoff else 0
        if n >= 20 and small >= 1 and ratio_ok_streak >= 5:
            break
        n += 1
        if n > 400 * (digits + 12):
            raise DivergenceDetected("stopping rule never satisfied")
    if quadratic:
        return quadratic_to_hp_safe(acc, prec)
    return HPReal.from_fraction(acc, prec)


def evaluate_pi_series(spec: PiSeriesSpec, digits: int) -> HPReal:
    """prefactor * sum of the series, to the requested digits.

    Raises DivergenceDetected for rows whose terms do not admit either the
    geometric stopping rule or the alternating-boundary acceleration.
    """
    prec = bits_for_digits(digits) + 48
    regime, _ = _scan_regime(spec.term)
    quadratic = not (
        spec.x.is_rational() and spec.mult_a.is_rational() and spec.mult_b.is_rational()
    )
    if regime == "geometric":
        total = _sum_geometric(spec.term, digits, quadratic, prec)
    else:
        flip = -1 if _sign_of(spec.term(1)) < 0 else 1

        def mag_term(k):
            v = spec.term(k)
            return v if (flip**k) > 0 else -v

        total = HPReal.from_fraction(alternating_sum_split(mag_term, digits), prec)
        check = HPReal.from_fraction(
            alternating_sum_split(mag_term, digits, extra_count=16), prec
        )
        if agreed_digits(total, check) < digits + 2:
            raise DivergenceDetected(
                "accelerated alternating sum failed its stability check"
            )
    if not (
        spec.prefactor_squared.is_rational()
        and spec.prefactor_squared.rational == 1
    ):
        pref = hp_sqrt(quadratic_to_hp(spec.prefactor_squared, prec))
        total = total * pref
    return total


def check_pi_identity(spec: PiSeriesSpec, digits: int) -> dict:
    """Compare the series value against target/pi; report agreed digits."""
    start = time.monotonic()
    report = {
        "id": spec.id,
        "paperTag": spec.paper_tag,
        "requestedDigits": digits,
    }
    try:
        value = evaluate_pi_series(spec, digits)
    except DivergenceDetected as exc:
        report.update({
            "pass": spec.divergent_expected,
            "agreedDigits": 0,
            "divergent": True,
            "detail": str(exc),
            "elapsedMs": int(1000 * (time.monotonic() - start)),
        })
        return report
    prec = bits_for_digits(digits) + 48
    target = quadratic_to_hp(spec.target, prec) / pi_oracle(digits + 10).with_prec(prec)
    agreed = agreed_digits(value, target)
    report.update({
        "pass": (agreed >= digits) and not spec.divergent_expected,
        "agreedDigits": agreed,
        "divergent": False,
        "elapsedMs": int(1000 * (time.monotonic() - start)),
    })
    return report


# ---------------------------------------------------------------------------
# Numeric sum specs (double sums, single sums, pi-targets)


@dataclass
class NumericSpec:
    kind: str
    scalar: QuadraticNumber
    mult_a: Fraction = Fraction(0)
    mult_b: Fraction = Fraction(0)
    outer: BinomialKernel | None = None
    z_base: Fraction = Fraction(0)
    inner: BinomialKernel | None = None
    inner_arg: Fraction = Fraction(0)
    seq: SequenceDef | None = None
    x: Fraction = Fraction(0)
    target_r: QuadraticNumber | None = None


def numeric_spec_from_json(data) -> NumericSpec:
    from . import catalog

    kind = data["kind"]
    scalar = catalog.quadratic_from_json(data.get("scalar", "1"))
    if kind == "double":
        return NumericSpec(
            kind=kind,
            scalar=scalar,
            mult_a=rat(data["multA"]),
            mult_b=rat(data["multB"]),
            outer=catalog.kernel_from_json(data["outer"]) if data.get("outer") else None,
            z_base=rat(data["zBase"]),
            inner=catalog.kernel_from_json(data["inner"]),
            inner_arg=rat(data["innerArg"]),
        )
    if kind == "single":
        return NumericSpec(
            kind=kind,
            scalar=scalar,
            mult_a=rat(data["multA"]),
            mult_b=rat(data["multB"]),
            seq=catalog.sequence(data["seq"]),
            x=rat(data["x"]),
        )
    if kind == "pi-target":
        return NumericSpec(
            kind=kind,
            scalar=QuadraticNumber.from_rational(1),
            target_r=catalog.quadratic_from_json(data["r"]),
        )
    raise ValueError(f"unknown numeric spec kind {kind!r}")


def _double_rows_direct(spec: NumericSpec, upto: int):
    rows = []
    zp = Fraction(1)
    for n in range(upto + 1):
        k_lo = max(0, spec.inner.support.k_min(n))
        k_hi = spec.inner.support.k_max(n)
        inner = Fraction(0)
        argp = spec.inner_arg**k_lo
        for k in range(k_lo, k_hi + 1):
            v = spec.inner.eval(n, k)
            if v != 0:
                inner += v * argp
            argp *= spec.inner_arg
        outer = spec.outer.eval(n, 0) if spec.outer is not None else Fraction(1)
        rows.append(outer * zp * inner)
        zp *= spec.z_base
    return rows


def evaluate_numeric(spec: NumericSpec, digits: int) -> HPReal:
    prec = bits_for_digits(digits) + 48
    if spec.kind == "pi-target":
        return quadratic_to_hp(spec.target_r, prec) / pi_oracle(digits + 10).with_prec(prec)
    if spec.kind == "single":
        pseries = PiSeriesSpec(
            seq=spec.seq,
            mult_a=QuadraticNumber.from_rational(spec.mult_a),
            mult_b=QuadraticNumber.from_rational(spec.mult_b),
            x=QuadraticNumber.from_rational(spec.x),
            prefactor_squared=QuadraticNumber.from_rational(1),
        )
        total = evaluate_pi_series(pseries, digits)
        return total * quadratic_to_hp(spec.scalar, prec)
    return _evaluate_double(spec, digits, prec)


def _evaluate_double(spec: NumericSpec, digits: int, prec: int) -> HPReal:
    """Row-by-row summation: exact inner sums, one conversion per row.

    Slowly converging sums switch to exact rows generated by a guessed (and
    fully re-checked) recurrence, which keeps every row an exact rational
    while avoiding millions of kernel evaluations.
    """
    head = 88
    rows = _double_rows_direct(spec, head)

    def tau(n, row):
        return (spec.mult_a * n + spec.mult_b) * row

    mags = [_mag_log2(tau(n, rows[n])) for n in range(head + 1)]
    tail = range(head - 24, head)
    growing = sum(1 for n in tail if mags[n + 1] > mags[n])
    if growing >= 20:
        raise DivergenceDetected("double-sum rows grow; series diverges")
    cutoff = -(digits + 12) * math.log2(10)
    gate = float(math.log2(63 / 64))
    tail_ratio = max(mags[n + 1] - mags[n] for n in tail)
    if tail_ratio >= gate - 1e-9 and tail_ratio >= 0:
        raise DivergenceDetected("double-sum rows do not decay")

    acc = Fraction(0)
    for n in range(head + 1):
        acc += tau(n, rows[n])
    if mags[-1] > cutoff:
        rec = guess_recurrence(rows, 4, 4)
        n = head + 1
        if rec is not None:
            while True:
                row = rec.term(n)
                t = tau(n, row)
                acc += t
                if n > head + 10 and _mag_log2(t) < cutoff:
                    break
                n += 1
                if n > 500 * (digits + 12):
                    raise DivergenceDetected("recurrence rows never small")
        else:
            zp = spec.z_base ** n
            while True:
                k_lo = max(0, spec.inner.support.k_min(n))
                k_hi = spec.inner.support.k_max(n)
                inner = Fraction(0)
                argp = spec.inner_arg**k_lo
                for k in range(k_lo, k_hi + 1):
                    v = spec.inner.eval(n, k)
                    if v != 0:
                        inner += v * argp
                    argp *= spec.inner_arg
                outer = spec.outer.eval(n, 0) if spec.outer is not None else Fraction(1)
                t = tau(n, outer * zp * inner)
                acc += t
                if n > head + 10 and _mag_log2(t) < cutoff:
                    break
                zp *= spec.z_base
                n += 1
                if n > 500 * (digits + 12):
                    raise DivergenceDetected("direct rows never small")
    total = HPReal.from_fraction(acc, prec)
    return total * quadratic_to_hp(spec.scalar, prec)


def check_numeric_equality(spec_a: NumericSpec, spec_b: NumericSpec,
                           digits: int, rec_id: str = "", paper_tag: str = "",
                           expect_divergent: bool = False) -> dict:
    start = time.monotonic()
    report = {"id": rec_id, "paperTag": paper_tag, "requestedDigits": digits}
    try:
        va = evaluate_numeric(spec_a, digits)
        vb = evaluate_numeric(spec_b, digits)
    except DivergenceDetected as exc:
        report.update({
            "pass": expect_divergent,
            "agreedDigits": 0,
            "divergent": True,
            "detail": str(exc),
            "elapsedMs": int(1000 * (time.monotonic() - start)),
        })
        return report
    agreed = agreed_digits(va, vb)
    report.update({
        "pass": (agreed >= digits) and not expect_divergent,
        "agreedDigits": agreed,
        "divergent": False,
        "elapsedMs": int(1000 * (time.monotonic() - start)),
    })
    return report


def run_catalog_check(identity_id: str, digits: int | None = None) -> dict:
    """Dispatch a catalog pi/numeric record to its checker."""
    from . import catalog

    rec = catalog.identity(identity_id)
    if rec.kind == "pi":
        spec = spec_from_record(rec)
        return check_pi_identity(spec, digits or 100)
    if rec.kind == "numeric":
        d = digits or int(rec.payload.get("digits", 40))
        spec_a = numeric_spec_from_json(rec.payload["lhs"])
        spec_b = numeric_spec_from_json(rec.payload["rhs"])
        return check_numeric_equality(
            spec_a, spec_b, d, rec_id=rec.id, paper_tag=rec.paper_tag,
            expect_divergent=bool(rec.payload.get("expectDivergent", False)),
        )
    raise ValueError(f"{identity_id} is not a numeric/pi record")
