import math
from fractions import Fraction as F

import pytest

from holopi import catalog
from holopi.holonomic import NoClosedForm
from holopi.kernels import (
    BinomialKernel,
    SequenceDef,
    SupportBound,
    kernel_eval,
    seq_eval_closed,
    seq_eval_recurrence,
    seqs_agree,
)


def h_oracle(n, k):
    """Direct product-of-binomials evaluation, independent of the package."""
    if k > n:
        return 0
    return (
        math.comb(2 * n, n) * math.comb(2 * k, k)
        * math.comb(n + 2 * k, n) * math.comb(n, k)
    )


class TestKernelEval:
    def test_h_values(self):
        h = catalog.kernel("h10")
        assert kernel_eval(h, 0, 0) == 1
        assert kernel_eval(h, 1, 2) == 0
        assert kernel_eval(h, 2, 1) == 144

    def test_h_against_oracle_grid(self):
        h = catalog.kernel("h10")
        for n in range(12):
            for k in range(12):
                assert kernel_eval(h, n, k) == h_oracle(n, k)

    def test_vanishing_outside_declared_support(self):
        for kid in ("h10", "level24", "level14-e1", "level10-new"):
            kernel = catalog.kernel(kid)
            sup = kernel.support
            for n in range(41):
                lo, hi = sup.k_min(n), sup.k_max(n)
                for k in list(range(0, lo)) + [hi + 1, hi + 3]:
                    if k < 0 or k > 40:
                        continue
                    assert kernel_eval(kernel, n, k) == 0

    def test_geometric_factors(self):
        kernel = BinomialKernel(
            factors=[((1, 0, 0), (0, 1, 0))],
            geoms=[(F(1, 2), (0, 1, 0))],
            support=SupportBound(0, 0, 1, 0),
        )
        assert kernel.eval(3, 2) == math.comb(3, 2) * F(1, 4)


class TestClosedForms:
    def test_s4_example(self):
        s4 = catalog.sequence("s4")
        assert seq_eval_closed(s4, 3) == 164
        oracle = sum(math.comb(3, k) ** 4 for k in range(4))
        assert oracle == 164

    def test_t24_example(self):
        t24 = catalog.sequence("t24")
        assert seq_eval_closed(t24, 2) == 10
        oracle = sum(
            math.comb(2, 2 * k) * math.comb(2 * k, k) ** 2 * math.comb(4 - 4 * k, 2 - 2 * k)
            for k in range(2)
        )
        assert oracle == 10

    def test_domb_example(self):
        domb = catalog.sequence("domb")
        assert seq_eval_closed(domb, 2) == 28
        oracle = sum(
            math.comb(2, j) ** 2 * math.comb(2 * j, j) * math.comb(4 - 2 * j, 2 - j)
            for j in range(3)
        )
        assert oracle == 28

    def test_no_closed_form(self):
        with pytest.raises(NoClosedForm):
            seq_eval_closed(catalog.sequence("t6"), 1)


class TestRecurrences:
    def test_t24_forward_step(self):
        t24 = catalog.sequence("t24")
        # at the written index 1: 8 t(2) = 2*3*5*2 + 4*5*1
        assert 8 * seq_eval_recurrence(t24, 2) == 2 * 3 * 5 * 2 + 4 * 5 * 1
        assert seq_eval_recurrence(t24, 2) == 10

    def test_a14_forward_step(self):
        a14 = catalog.sequence("a14")
        # 27 a(3) = 95*9 + 384 + 84
        assert 27 * seq_eval_recurrence(a14, 3) == 95 * 9 + 384 + 84
        assert seq_eval_recurrence(a14, 3) == 49

    def test_A14_forward_step(self):
        A14 = catalog.sequence("A14")
        # 8 A(2) = 3*27*5 - 141
        assert 8 * seq_eval_recurrence(A14, 2) == 3 * 27 * 5 - 141
        assert seq_eval_recurrence(A14, 2) == 33

    def test_known_prefixes(self):
        expected = {
            "s4": [1, 2, 18, 164, 1810],
            "t24": [1, 2, 10],
            "domb": [1, 4, 28, 256],
            "a14": [1, 1, 9, 49],
            "A14": [1, 5, 33],
            "v6": [1, 12, 156],
            "t6": [1, 0, 12, -48],
            "u6": [1, 3, 15, 93],
        }
        for sid, terms in expected.items():
            seq = catalog.sequence(sid)
            assert [seq.term(n) for n in range(len(terms))] == terms


class TestSeqsAgree:
    def test_lemma_pair_to_thirty(self):
        s4 = catalog.sequence("s4")
        lb = catalog.sequence("lemma1b")
        agree, idx = seqs_agree(s4, lb, 30, "closed", "closed")
        assert agree and idx is None

    def test_t24_closed_vs_recurrence(self):
        t24 = catalog.sequence("t24")
        agree, _ = seqs_agree(t24, t24, 50, "closed", "recurrence")
        assert agree

    def test_mismatch_reported(self):
        ones = SequenceDef(
            "ones",
            closed=BinomialKernel(factors=[], support=SupportBound(0, 0, 0, 0)),
        )
        domb = catalog.sequence("domb")
        agree, idx = seqs_agree(ones, domb, 1)
        assert not agree and idx == 1

    def test_dual_representation_catalog_sequences(self):
        for sid, seq in catalog.all_sequences().items():
            if seq.closed is not None and seq.recurrence is not None:
                agree, idx = seqs_agree(seq, seq, 60, "closed", "recurrence")
                assert agree, f"{sid} diverges at {idx}"


def test_v6_against_independent_expansion():
    # coefficients of sum C(3n,n) C(2n,n)^2 x^n (1-16x)^(2n) through x^2
    from holopi.series import TruncatedSeries

    order = 2
    total = TruncatedSeries.zero(order)
    base = TruncatedSeries.from_poly([1, -16], order)
    for n in range(order + 1):
        w = math.comb(3 * n, n) * math.comb(2 * n, n) ** 2
        total = total + (base**(2 * n)).mul_xpow(n) * w
    v6 = catalog.sequence("v6")
    assert list(total.coeffs) == [v6.term(n) for n in range(order + 1)] == [1, 12, 156]
