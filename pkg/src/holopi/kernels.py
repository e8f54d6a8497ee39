"""Binomial kernels in (n, k) and named sequences built from them.

A kernel is a product of binomials with affine-form tops and bottoms plus an
optional rational scalar and geometric factors base**(affine in n,k). Every
kernel declares the k-range (as affine bounds in n) outside which it
provably vanishes; evaluation outside that range short-circuits to zero so
negative binomial tops are never touched.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .holonomic import NoClosedForm, NoRecurrence, PRecurrence
from .numerics import rat

Affine = tuple  # (a, b, c) meaning a*n + b*k + c with integer entries


def affine_eval(form: Affine, n: int, k: int) -> int:
    a, b, c = form
    return a * n + b * k + c


def binom(top: int, bot: int) -> int:
    """C(top, bot) with the vanishing convention for bot < 0 or bot > top."""
    if bot < 0 or top < 0 or bot > top:
        return 0
    return math.comb(top, bot)


class SupportBound:
    """k-range [ceil(lo_a*n + lo_c), floor(hi_a*n + hi_c)] for each n."""

    __slots__ = ("lo_a", "lo_c", "hi_a", "hi_c")

    def __init__(self, lo_a, lo_c, hi_a, hi_c):
        self.lo_a = rat(lo_a)
        self.lo_c = rat(lo_c)
        self.hi_a = rat(hi_a)
        self.hi_c = rat(hi_c)

    def k_min(self, n: int) -> int:
        return math.ceil(self.lo_a * n + self.lo_c)

    def k_max(self, n: int) -> int:
        return math.floor(self.hi_a * n + self.hi_c)

    def contains(self, n: int, k: int) -> bool:
        return self.k_min(n) <= k <= self.k_max(n)


class BinomialKernel:
    def __init__(self, factors, scalar=1, geoms=(), support: SupportBound | None = None):
        self.factors = tuple(
            (tuple(int(v) for v in top), tuple(int(v) for v in bot))
            for top, bot in factors
        )
        self.scalar = rat(scalar)
        self.geoms = tuple((rat(base), tuple(int(v) for v in exp)) for base, exp in geoms)
        self.support = support if support is not None else SupportBound(0, 0, 1, 0)

    def eval(self, n: int, k: int) -> Fraction:
        if n < 0 or k < 0 or not self.support.contains(n, k):
            return Fraction(0)
        acc = self.scalar
        for top, bot in self.factors:
            b = binom(affine_eval(top, n, k), affine_eval(bot, n, k))
            if b == 0:
                return Fraction(0)
            acc *= b
        for base, exp in self.geoms:
            acc *= base ** affine_eval(exp, n, k)
        return acc


def kernel_eval(kernel: BinomialKernel, n: int, k: int) -> Fraction:
    return kernel.eval(n, k)


class SequenceDef:
    """Named sequence with a closed binomial-sum form and/or a recurrence."""

    def __init__(self, id: str, closed: BinomialKernel | None = None,
                 recurrence: PRecurrence | None = None, known_terms=(), notes: str = ""):
        if closed is None and recurrence is None:
            raise ValueError(f"sequence {id}: need closed form or recurrence")
        self.id = id
        self.closed = closed
        self.recurrence = recurrence
        self.known_terms = tuple(rat(t) for t in known_terms)
        self.notes = notes
        self._closed_cache: dict[int, Fraction] = {}
        self._lock = threading.Lock()

    def term_closed(self, n: int) -> Fraction:
        if self.closed is None:
            raise NoClosedForm(f"sequence {self.id} has no closed form")
        with self._lock:
            hit = self._closed_cache.get(n)
        if hit is not None:
            return hit
        lo = max(0, self.closed.support.k_min(n))
        hi = self.closed.support.k_max(n)
        total = Fraction(0)
        for k in range(lo, hi + 1):
            total += self.closed.eval(n, k)
        with self._lock:
            self._closed_cache[n] = total
        return total

    def term_recurrence(self, n: int) -> Fraction:
        if self.recurrence is None:
            raise NoRecurrence(f"sequence {self.id} has no recurrence")
        return self.recurrence.term(n)

    def term(self, n: int) -> Fraction:
        """Preferred evaluation: recurrence when available (it is cheaper)."""
        if self.recurrence is not None:
            return self.term_recurrence(n)
        return self.term_closed(n)

    def prefix(self, upto: int):
        return [self.term(n) for n in range(upto + 1)]

    def __repr__(self):
        return f"SequenceDef({self.id!r})"


def seq_eval_closed(seq: SequenceDef, n: int) -> Fraction:
    return seq.term_closed(n)


def seq_eval_recurrence(seq: SequenceDef, n: int) -> Fraction:
    return seq.term_recurrence(n)


def _pick_eval(seq: SequenceDef, mode: str):
    if mode == "closed":
        return seq.term_closed
    if mode == "recurrence":
        return seq.term_recurrence
    return seq.term


def seqs_agree(seq_a: SequenceDef, seq_b: SequenceDef, upto: int,
               mode_a: str = "auto", mode_b: str = "auto"):
    """Exact term-by-term comparison; returns (agree, first_mismatch_index)."""
    eval_a = _pick_eval(seq_a, mode_a)
    eval_b = _pick_eval(seq_b, mode_b)
    for n in range(upto + 1):
        if eval_a(n) != eval_b(n):
            return False, n
    return True, None
