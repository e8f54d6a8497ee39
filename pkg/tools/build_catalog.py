#!/usr/bin/env python3
"""Regenerate the shipped JSON catalogs (sequences.json, identities.json).

Kernels, recurrences, and identity sides are constructed with the package's
own types, sanity-checked against independently computed values, and then
serialized. Run from the repository root:

    python3 tools/build_catalog.py
"""

import json
import math
import os
import sys
from fractions import Fraction as F

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from holopi.holonomic import guess_recurrence, precurrence_from_offsets
from holopi.kernels import BinomialKernel, SequenceDef, SupportBound
from holopi.numerics import QuadraticNumber, is_squarefree
from holopi.poly import poly, poly_mul

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "holopi", "data")


# ---------------------------------------------------------------------------
# helpers


def kern(factors, lo=("0", "0"), hi=("1", "0"), scalar="1", geoms=None):
    data = {
        "factors": [{"top": list(t), "bottom": list(b)} for t, b in factors],
        "scalar": scalar,
        "support": {"kMin": list(lo), "kMax": list(hi)},
    }
    if geoms:
        data["geometric"] = [{"base": g, "exponent": list(e)} for g, e in geoms]
    return data


def pstr(p):
    return [str(c) for c in p]


def rec_json(offset_terms, initial):
    """Serialize a paper-form recurrence (offset, poly factors) exactly."""
    terms = []
    for offset, factors in offset_terms:
        acc = poly(factors[0])
        for f in factors[1:]:
            acc = poly_mul(acc, poly(f))
        terms.append((offset, acc))
    rec = precurrence_from_offsets(terms, initial)
    return {
        "order": rec.order,
        "coeffs": [pstr(p) for p in rec.coeffs],
        "initial": [str(c) for c in rec.initial],
        "validFrom": rec.valid_from,
    }, rec


def quad(r="0", s="0", d=1):
    if s in ("0", 0):
        return str(r)
    return {"rat": str(r), "surd": str(s), "d": d}


def quad_from_exact(v):
    if isinstance(v, QuadraticNumber):
        if v.surd == 0:
            return str(v.rational)
        return {"rat": str(v.rational), "surd": str(v.surd), "d": v.radicand}
    return str(v)


def sqrt_of_fraction(fr):
    """sqrt(fr) as (coefficient, squarefree d) with fr = coefficient^2 * d."""
    fr = F(fr)
    assert fr > 0
    m = fr.numerator * fr.denominator
    square = 1
    d = 1
    f = 2
    mm = m
    while f * f <= mm:
        e = 0
        while mm % f == 0:
            mm //= f
            e += 1
        square *= f ** (e // 2)
        if e % 2:
            d *= f
        f += 1
    d *= mm
    assert is_squarefree(d)
    coef = F(square, fr.denominator)
    assert coef * coef * d == fr
    return coef, d


def S(outer=None, sign=1, geom="1", xn=1, xs=0, scalar="1", pref=(), inner=None, mult=None):
    side = {"xPowN": xn}
    if outer is not None:
        side["outer"] = outer
    if sign != 1:
        side["sign"] = sign
    if geom != "1":
        side["geom"] = geom
    if xs:
        side["xShift"] = xs
    if scalar != "1":
        side["scalar"] = scalar
    if pref:
        side["prefactors"] = [{"poly": list(p), "n": n, "c": c} for p, n, c in pref]
    if inner is not None:
        side["inner"] = inner
    if mult is not None:
        side["mult"] = {"A": mult[0], "B": mult[1]}
    return side


def INNER(kernel, xpk=1, geom="1"):
    data = {"kernel": kernel}
    if xpk != 1:
        data["xPowK"] = xpk
    if geom != "1":
        data["geom"] = geom
    return data


def RAT(v):
    return {"rat": str(v)}


def PARAM(name):
    return {"param": name}


def POLY(*coeffs):
    return {"poly": [str(c) for c in coeffs]}


def ADD(*args):
    return {"add": list(args)}


def MUL(*args):
    return {"mul": list(args)}


def POW(base, num, den=1):
    return {"pow": [base, num, den]}


def DOP(e):
    return {"D": e}


def SIDE(side):
    return {"side": side}


def SEQSERIES(seq_id):
    return SIDE(S(outer={"seq": seq_id}, xn=1))


# ---------------------------------------------------------------------------
# kernels

K_H10 = kern([((2, 0, 0), (1, 0, 0)), ((0, 2, 0), (0, 1, 0)),
              ((1, 2, 0), (1, 0, 0)), ((1, 0, 0), (0, 1, 0))])
K_LEVEL24 = kern([((1, 1, 0), (0, 2, 0)), ((0, 2, 0), (0, 1, 0)),
                  ((0, 2, 0), (0, 1, 0)), ((2, -2, 0), (1, -1, 0))])
K_LV6_DIV = kern([((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 1, 0)),
                  ((1, 1, 0), (0, 1, 0))])
K_LV6_CLEVER = kern([((0, 2, 0), (0, 1, 0)), ((0, 2, 0), (0, 1, 0)),
                     ((2, -2, 0), (1, -1, 0))])
K_LV4 = kern([((1, 0, 0), (0, 1, 0)), ((0, 2, 0), (0, 1, 0)),
              ((2, -2, 0), (1, -1, 0))])
K_LV14_E1 = kern([((0, 2, 0), (0, 1, 0)), ((0, 2, 0), (0, 1, 0)),
                  ((0, 1, 0), (1, -1, 0))], lo=("1/2", "0"))
K_LV14_E2 = kern([((1, 0, 0), (0, 1, 0)), ((1, 1, 0), (1, 0, 0)),
                  ((0, 2, 0), (0, 1, 0))])
K_LV10_I10 = kern([((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 1, 0)),
                   ((2, -2, 0), (1, -1, 0))])
K_LV10_NEW = kern([((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 1, 0)),
                   ((2, -2, 0), (1, 0, 0))], hi=("1/2", "0"))
K_TRANS1 = kern([((1, -1, 0), (0, 1, 0)), ((0, 2, 0), (0, 1, 0)),
                 ((2, -2, 0), (1, -1, 0)), ((2, -2, 0), (1, -1, 0))],
                hi=("1/2", "0"))
K_CB = kern([((2, 0, 0), (1, 0, 0))], hi=("0", "0"))
K_CB3 = kern([((2, 0, 0), (1, 0, 0))] * 3, hi=("0", "0"))
K_C3C2SQ = kern([((3, 0, 0), (1, 0, 0)), ((2, 0, 0), (1, 0, 0)),
                 ((2, 0, 0), (1, 0, 0))], hi=("0", "0"))
K_C42C22 = kern([((4, 0, 0), (2, 0, 0)), ((2, 0, 0), (1, 0, 0)),
                 ((2, 0, 0), (1, 0, 0))], hi=("0", "0"))

KERNELS = {
    "h10": K_H10,
    "level24": K_LEVEL24,
    "level6-div": K_LV6_DIV,
    "level6-clever": K_LV6_CLEVER,
    "level4": K_LV4,
    "level14-e1": K_LV14_E1,
    "level14-e2": K_LV14_E2,
    "level10-i10": K_LV10_I10,
    "level10-new": K_LV10_NEW,
    "trans1": K_TRANS1,
}


# ---------------------------------------------------------------------------
# sequences

n3 = [("1", "3", "3", "1")]  # (n+1)^3 given factored below instead


def build_sequences():
    seqs = []

    # s4: recurrence obtained by exact guessing, then verified on 240 terms
    s4_kernel = BinomialKernel([((1, 0, 0), (0, 1, 0))] * 4,
                               support=SupportBound(0, 0, 1, 0))
    s4_seq = SequenceDef("s4", closed=s4_kernel)
    s4_terms = [s4_seq.term_closed(i) for i in range(40)]
    s4_rec = guess_recurrence(s4_terms, 2, 3)
    assert s4_rec.annihilates([s4_seq.term_closed(i) for i in range(240)])
    seqs.append({
        "id": "s4",
        "closedForm": kern([((1, 0, 0), (0, 1, 0))] * 4),
        "recurrence": {
            "order": s4_rec.order,
            "coeffs": [pstr(p) for p in s4_rec.coeffs],
            "initial": [str(c) for c in s4_rec.initial],
            "validFrom": 0,
        },
        "knownTerms": ["1", "2", "18", "164", "1810"],
        "notes": "central sum of fourth powers of binomials; recurrence guessed "
                 "from exact terms and checked by annihilation",
    })

    seqs.append({
        "id": "lemma1b",
        "closedForm": kern([((0, 2, 0), (0, 1, 0)), ((2, -2, 0), (1, -1, 0)),
                            ((1, 1, 0), (1, -1, 0)), ((1, -1, 0), (0, 1, 0))]),
        "recurrence": None,
        "knownTerms": ["1", "2", "18", "164", "1810"],
        "notes": "companion binomial sum matching s4 term by term",
    })

    t24_json, t24_rec = rec_json([
        (1, [("1", "1"), ("1", "1"), ("1", "1")]),                      # (n+1)^3
        (0, [("-2",), ("1", "2"), ("1", "2", "2")]),                    # -2(2n+1)(2n^2+2n+1)
        (-1, [("0", "-4"), ("1", "0", "4")]),                           # -4n(4n^2+1)
        (-2, [("0", "64"), ("-1", "1"), ("-1", "2")]),                  # 64n(n-1)(2n-1)
    ], ["1"])
    assert [t24_rec.term(i) for i in range(5)] == [1, 2, 10, 44, 250]
    seqs.append({
        "id": "t24",
        "closedForm": kern([((1, 0, 0), (0, 2, 0)), ((0, 2, 0), (0, 1, 0)),
                            ((0, 2, 0), (0, 1, 0)), ((2, -4, 0), (1, -2, 0))],
                           hi=("1/2", "0")),
        "recurrence": t24_json,
        "knownTerms": ["1", "2", "10", "44", "250"],
        "notes": "level-24 sequence: four-term recurrence, one initial value",
    })

    domb_json, domb_rec = rec_json([
        (1, [("1", "1"), ("1", "1"), ("1", "1")]),
        (0, [("-1",), ("1", "2"), ("4", "10", "10")]),                  # -(2n+1)(10n^2+10n+4)
        (-1, [("0", "0", "0", "64")]),
    ], ["1"])
    assert [domb_rec.term(i) for i in range(5)] == [1, 4, 28, 256, 2716]
    seqs.append({
        "id": "domb",
        "closedForm": kern([((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 1, 0)),
                            ((0, 2, 0), (0, 1, 0)), ((2, -2, 0), (1, -1, 0))]),
        "recurrence": domb_json,
        "knownTerms": ["1", "4", "28", "256", "2716"],
        "notes": "Domb numbers",
    })

    u6_json, u6_rec = rec_json([
        (1, [("1", "1"), ("1", "1")]),
        (0, [("-3", "-10", "-10")]),
        (-1, [("0", "0", "9")]),
    ], ["1"])
    assert [u6_rec.term(i) for i in range(4)] == [1, 3, 15, 93]
    seqs.append({
        "id": "u6",
        "closedForm": kern([((1, 0, 0), (0, 1, 0)), ((1, 0, 0), (0, 1, 0)),
                            ((0, 2, 0), (0, 1, 0))]),
        "recurrence": u6_json,
        "knownTerms": ["1", "3", "15", "93"],
        "notes": "inner weights of the level-6 form before the variable change",
    })

    seqs.append({
        "id": "zl6",
        "closedForm": kern([((2, 0, 0), (1, 0, 0)), ((1, 0, 0), (0, 1, 0)),
                            ((1, 0, 0), (0, 1, 0)), ((0, 2, 0), (0, 1, 0))]),
        "recurrence": None,
        "knownTerms": ["1", "6", "90", "1860"],
        "notes": "coefficients of the level-6 series solving the third-order "
                 "equation in X",
    })

    t6_json, t6_rec = rec_json([
        (1, [("1", "1"), ("1", "1"), ("1", "1")]),
        (0, [("0", "2"), ("1", "1"), ("1", "2")]),                      # +2n(n+1)(2n+1)
        (-1, [("0", "-16"), ("1", "0", "5")]),                          # -16n(5n^2+1)
        (-2, [("0", "96"), ("-1", "1"), ("-1", "2")]),                  # +96n(n-1)(2n-1)
    ], ["1"])
    assert [t6_rec.term(i) for i in range(5)] == [1, 0, 12, -48, 540]
    seqs.append({
        "id": "t6",
        "closedForm": None,
        "recurrence": t6_json,
        "knownTerms": ["1", "0", "12", "-48", "540"],
        "notes": "level-6 sequence of the alternate parameterization",
    })

    v6_json, v6_rec = rec_json([
        (1, [("1", "1"), ("1", "1"), ("1", "1")]),
        (0, [("-1",), ("1", "2"), ("12", "22", "22")]),                 # -(2n+1)(22n^2+22n+12)
        (-1, [("0", "128"), ("1", "0", "5")]),                          # +128n(5n^2+1)
        (-2, [("0", "-1536"), ("-1", "1"), ("-1", "2")]),               # -1536n(n-1)(2n-1)
    ], ["1"])
    assert [v6_rec.term(i) for i in range(3)] == [1, 12, 156]
    seqs.append({
        "id": "v6",
        "closedForm": None,
        "recurrence": v6_json,
        "knownTerms": ["1", "12", "156"],
        "notes": "companion level-6 sequence",
    })

    a14_json, a14_rec = rec_json([
        (1, [("1", "1"), ("1", "1"), ("1", "1")]),
        (0, [("-1",), ("1", "2"), ("1", "3", "3")]),                    # -(2n+1)(3n^2+3n+1)
        (-1, [("0", "-4", "0", "-47")]),                                # -n(47n^2+4)
        (-2, [("0", "-14"), ("-1", "1"), ("-1", "2")]),                 # -14n(n-1)(2n-1)
    ], ["1"])
    assert [a14_rec.term(i) for i in range(4)] == [1, 1, 9, 49]
    seqs.append({
        "id": "a14",
        "closedForm": None,
        "recurrence": a14_json,
        "knownTerms": ["1", "1", "9", "49"],
        "notes": "level-14 sequence shared by three specializations",
    })

    A14_json, A14_rec = rec_json([
        (1, [("1", "1"), ("1", "1"), ("1", "1")]),
        (0, [("-1",), ("1", "2"), ("5", "11", "11")]),                  # -(2n+1)(11n^2+11n+5)
        (-1, [("0", "20", "0", "121")]),                                # +n(121n^2+20)
        (-2, [("0", "-98"), ("-1", "1"), ("-1", "2")]),                 # -98n(n-1)(2n-1)
    ], ["1"])
    assert [A14_rec.term(i) for i in range(3)] == [1, 5, 33]
    seqs.append({
        "id": "A14",
        "closedForm": None,
        "recurrence": A14_json,
        "knownTerms": ["1", "5", "33"],
        "notes": "partner level-14 sequence linked through the composition "
                 "identity",
    })

    cb_json, cb_rec = rec_json([(1, [("1", "1")]), (0, [("-2", "-4")])], ["1"])
    assert [cb_rec.term(i) for i in range(4)] == [1, 2, 6, 20]
    seqs.append({
        "id": "cb",
        "closedForm": K_CB,
        "recurrence": cb_json,
        "knownTerms": ["1", "2", "6", "20"],
        "notes": "central binomial coefficients",
    })

    cb3_json, cb3_rec = rec_json([
        (1, [("1", "1"), ("1", "1"), ("1", "1")]),
        (0, [("-8",), ("1", "2"), ("1", "2"), ("1", "2")]),
    ], ["1"])
    assert [cb3_rec.term(i) for i in range(3)] == [1, 8, 216]
    seqs.append({
        "id": "cb3",
        "closedForm": K_CB3,
        "recurrence": cb3_json,
        "knownTerms": ["1", "8", "216"],
        "notes": "cubes of central binomials",
    })

    c3_json, c3_rec = rec_json([
        (1, [("1", "1"), ("1", "1"), ("1", "1")]),
        (0, [("-6",), ("1", "3"), ("2", "3"), ("1", "2")]),             # -6(3n+1)(3n+2)(2n+1)
    ], ["1"])
    assert [c3_rec.term(i) for i in range(3)] == [1, 12, 540]
    seqs.append({
        "id": "c3c2sq",
        "closedForm": K_C3C2SQ,
        "recurrence": c3_json,
        "knownTerms": ["1", "12", "540"],
        "notes": "C(3n,n) C(2n,n)^2",
    })

    c4_json, c4_rec = rec_json([
        (1, [("1", "1"), ("1", "1"), ("1", "1")]),
        (0, [("-8",), ("1", "4"), ("3", "4"), ("1", "2")]),             # -8(4n+1)(4n+3)(2n+1)
    ], ["1"])
    assert [c4_rec.term(i) for i in range(3)] == [1, 24, 2520]
    seqs.append({
        "id": "c42c22",
        "closedForm": K_C42C22,
        "recurrence": c4_json,
        "knownTerms": ["1", "24", "2520"],
        "notes": "C(4n,2n) C(2n,n)^2",
    })

    return seqs


# ---------------------------------------------------------------------------
# identities


def translation_sides():
    """All (an+b) -> (An+B) rules with their multiplier expressions."""
    a, b = PARAM("a"), PARAM("b")

    def lin(name):
        return PARAM(name)

    rules = []

    # weight transport for the h kernel: A = 3a(1+4x)/(5(1+2x)),
    # B = 4ax/(5(1+2x)) + b
    rules.append({
        "id": "fdf-translation", "paperTag": "10p", "kind": "translation",
        "defaultOrder": 30,
        "lhs": S(outer=None, xn=1, inner=INNER(K_H10), mult=(a, b)),
        "rhs": S(outer={"seq": "s4"}, xn=1, mult=(
            MUL(RAT("3/5"), a, POLY(1, 4), POW(POLY(1, 2), -1)),
            ADD(MUL(RAT("4/5"), a, POLY(0, 1), POW(POLY(1, 2), -1)), b),
        )),
    })

    rules.append({
        "id": "i1", "paperTag": "i1", "kind": "translation", "defaultOrder": 30,
        "lhs": S(outer={"kernel": K_CB}, xn=1,
                 pref=[(("1", "4"), -2, "0")], inner=INNER(K_LV4), mult=(a, b)),
        "rhs": S(outer={"seq": "cb3"}, xn=2, mult=(
            MUL(RAT("3/2"), a, POLY(1, 4), POLY(1, 4), POW(POLY(1, -4), -1)),
            MUL(POLY(1, 4), ADD(b, MUL(RAT(4), a, POLY(0, 1), POW(POLY(1, -4), -1)))),
        )),
    })

    c, d = PARAM("c"), PARAM("d")
    rules.append({
        "id": "i11", "paperTag": "i11", "kind": "translation", "defaultOrder": 30,
        "params": ["c", "d"],
        "lhs": S(outer={"kernel": K_CB}, sign=-1, xn=1,
                 pref=[(("1", "-8"), -1, "0")], inner=INNER(K_LV4), mult=(c, d)),
        "rhs": S(outer={"seq": "cb3"}, xn=2, mult=(
            MUL(RAT("3/2"), c, POW(POLY(1, -8), 3, 2), POW(POLY(1, 0, -16), -1)),
            MUL(POW(POLY(1, -8), 1, 2),
                ADD(d, MUL(RAT(-4), c, POLY(0, 1), POLY(1, -2),
                           POW(POLY(1, 0, -16), -1)))),
        )),
    })

    rules.append({
        "id": "m1", "paperTag": "m1", "kind": "translation", "defaultOrder": 30,
        "lhs": S(outer={"kernel": K_CB}, xn=1,
                 pref=[(("1", "-4"), -1, "0")], inner=INNER(K_LV6_DIV), mult=(a, b)),
        "rhs": S(outer={"seq": "c3c2sq"}, xn=2,
                 pref=[(("1", "-4"), -3, "0")], mult=(
            MUL(RAT("4/3"), a, POLY(1, 2), POLY(1, -1),
                POW(POLY(1, -4, 8), -1), POW(POLY(1, -4), -1, 2)),
            MUL(POW(POLY(1, -4), -1, 2),
                ADD(MUL(RAT(2), a, POLY(0, 1), POLY(1, -2),
                        POW(POLY(1, -4, 8), -1)), b)),
        )),
    })

    rules.append({
        "id": "herewegoagain", "paperTag": "herewegoagain", "kind": "translation",
        "defaultOrder": 30,
        "lhs": S(outer={"kernel": K_CB}, sign=-1, xn=1,
                 pref=[(("1", "-16"), -1, "0")], inner=INNER(K_LV6_CLEVER),
                 mult=(a, b)),
        "rhs": S(outer={"seq": "c3c2sq"}, xn=2,
                 pref=[(("1", "-4"), -3, "0")], mult=(
            MUL(RAT("4/3"), a, POW(POLY(1, -16), 3, 2), POLY(1, 2),
                POW(POLY(1, -4), -1), POW(POLY(1, -8), -1)),
            MUL(POW(POLY(1, -16), 1, 2), POW(POLY(1, -4), -1),
                ADD(b, MUL(RAT(-4), a, POLY(0, 1), POW(POLY(1, -8), -1)))),
        )),
    })

    rules.append({
        "id": "eq55", "paperTag": "55", "kind": "translation", "defaultOrder": 30,
        "lhs": S(outer={"kernel": K_CB}, xn=1,
                 pref=[(("1", "4"), -2, "0")], inner=INNER(K_LV6_CLEVER),
                 mult=(a, b)),
        "rhs": S(outer={"seq": "c3c2sq"}, xn=2,
                 pref=[(("1", "-4"), 1, "0")], mult=(
            MUL(RAT("4/3"), a, POLY(1, 4), POLY(1, 4), POLY(1, -6),
                POW(POLY(1, -4), -2)),
            MUL(POLY(1, 4), ADD(MUL(RAT(4), a, POLY(0, 1),
                                    POW(POLY(1, -4), -1)), b)),
        )),
    })

    rules.append({
        "id": "level2", "paperTag": "level2", "kind": "translation",
        "defaultOrder": 30,
        "lhs": S(outer={"kernel": K_CB}, sign=-1, geom="1/2", xn=0,
                 pref=[(("1", "16"), -1, "0")],
                 inner=INNER(K_LV14_E1, 1, "4"), mult=(a, b)),
        "rhs": S(outer={"seq": "c42c22"}, xn=2, mult=(
            MUL(RAT(4), a, POW(POLY(1, 16), 3, 2), POW(POLY(1, -48), -1)),
            MUL(POW(POLY(1, 16), 1, 2),
                ADD(b, MUL(RAT(32), a, POLY(0, 1), POW(POLY(1, -48), -1)))),
        )),
    })

    rules.append({
        "id": "i10", "paperTag": "i10", "kind": "translation", "defaultOrder": 30,
        "lhs": S(outer={"kernel": K_CB}, xn=1,
                 pref=[(("1", "2"), -2, "0")], inner=INNER(K_LV10_I10),
                 mult=(a, b)),
        "rhs": S(outer={"seq": "s4"}, xn=1, mult=(
            MUL(RAT("4/5"), a, POLY(1, -1), POLY(1, 2), POLY(1, 2),
                POW(POLY(1, -4), -1)),
            MUL(POLY(1, 2), ADD(b, MUL(RAT("6/5"), a, POLY(0, 1), POLY(2, -1),
                                       POW(POLY(1, -4), -1)))),
        )),
    })

    lam = PARAM("lam")
    rules.append({
        "id": "interesting", "paperTag": "interesting", "kind": "translation",
        "defaultOrder": 30, "params": ["lam"], "basis": [["0"], ["1"]],
        "lhs": S(outer={"kernel": K_CB}, xn=1,
                 pref=[(("1", "1"), -2, "-1")], inner=INNER(K_LV14_E2),
                 mult=(POLY(1, -2, 1), MUL(POLY(0, 1), ADD(lam, RAT(-1))))),
        "rhs": S(outer={"kernel": K_CB}, xn=1,
                 pref=[(("1", "-1"), -2, "-1")], inner=INNER(K_LV14_E1),
                 mult=(POLY(1, 2, 1), MUL(POLY(0, 1), ADD(lam, RAT(1))))),
        "notes": "free-parameter offsets carry a factor x: with constant "
                 "offsets both sides already disagree at the constant term",
    })

    for r in rules:
        r.setdefault("params", ["a", "b"])
        r.setdefault("basis", [["1", "0"], ["0", "1"]])
    return rules


def series_identities():
    ids = []

    def rec_add(id_, tag, lhs, rhs, order=40, notes=""):
        entry = {"id": id_, "paperTag": tag, "kind": "series",
                 "defaultOrder": order, "lhs": lhs, "rhs": rhs}
        if notes:
            entry["notes"] = notes
        ids.append(entry)

    rec_add("fdf-1", "fDf",
            SIDE(S(outer=None, xn=1, inner=INNER(K_H10))),
            SEQSERIES("s4"))
    f_series = SEQSERIES("s4")
    rec_add("fdf-2", "fDf",
            SIDE(S(outer=None, xn=1, inner=INNER(K_H10), mult=(RAT(1), RAT(0)))),
            MUL(ADD(MUL(POLY(0, 4), f_series), MUL(POLY(3, 12), DOP(f_series))),
                POW(POLY(5, 10), -1)),
            order=30)
    rec_add("fx", "fx",
            SIDE(S(outer=None, xn=1, inner=INNER(K_LEVEL24))),
            SEQSERIES("t24"))
    rec_add("rogers", "rogers",
            SEQSERIES("domb"),
            SIDE(S(outer={"seq": "c3c2sq"}, xn=2, pref=[(("1", "-4"), -3, "-1")])))
    rec_add("div", "div",
            SIDE(S(outer={"kernel": K_CB}, xn=1, pref=[(("1", "-4"), -1, "-1/2")],
                   inner=INNER(K_LV6_DIV))),
            SEQSERIES("domb"))
    rec_add("clever", "clever",
            SIDE(S(outer={"kernel": K_CB}, sign=-1, xn=1,
                   pref=[(("1", "-16"), -1, "-1/2")], inner=INNER(K_LV6_CLEVER))),
            SEQSERIES("domb"))
    rec_add("nice", "nice",
            SIDE(S(outer={"kernel": K_CB}, xn=1, pref=[(("1", "4"), -2, "-1")],
                   inner=INNER(K_LV6_CLEVER))),
            SEQSERIES("t6"))
    rec_add("heun", "heun",
            SIDE(S(outer={"kernel": K_CB}, xn=1, pref=[(("1", "4"), -2, "-1")],
                   inner=INNER(K_LV6_CLEVER))),
            SIDE(S(outer={"seq": "c3c2sq"}, xn=2, pref=[(("1", "-4"), 1, "0")])))
    rec_add("par-x-23", "d2=d3",
            SEQSERIES("t6"),
            SIDE(S(outer={"seq": "domb"}, sign=-1, xn=1,
                   pref=[(("1", "-4"), -1, "-1")])))
    rec_add("par-x-34", "d3=d4",
            SIDE(S(outer={"seq": "domb"}, sign=-1, xn=1,
                   pref=[(("1", "-4"), -1, "-1")])),
            SIDE(S(outer={"seq": "c3c2sq"}, xn=2, pref=[(("1", "-4"), 1, "0")])))
    rec_add("par1-x-23", "par1",
            SEQSERIES("v6"),
            SIDE(S(outer={"seq": "domb"}, sign=-1, xn=1,
                   pref=[(("1", "-16"), -1, "-1")])))
    rec_add("par1-x-34", "par1",
            SIDE(S(outer={"seq": "domb"}, sign=-1, xn=1,
                   pref=[(("1", "-16"), -1, "-1")])),
            SIDE(S(outer={"seq": "c3c2sq"}, xn=1, pref=[(("1", "-16"), 2, "0")])))
    rec_add("e1", "e1",
            SIDE(S(outer={"kernel": K_CB}, xn=1, pref=[(("1", "-1"), -2, "-1")],
                   inner=INNER(K_LV14_E1))),
            SEQSERIES("a14"))
    rec_add("e2", "e2",
            SIDE(S(outer={"kernel": K_CB}, xn=1, pref=[(("1", "1"), -2, "-1")],
                   inner=INNER(K_LV14_E2))),
            SEQSERIES("a14"))
    rec_add("eq14", "14",
            SIDE(S(outer={"seq": "a14"}, xn=1, xs=1,
                   pref=[(("1", "5", "8"), -1, "-1")])),
            SIDE(S(outer={"seq": "A14"}, xn=1, xs=1,
                   pref=[(("1", "9", "8"), -1, "-1")])))
    rec_add("dash", "dash",
            SIDE(S(outer={"kernel": K_CB}, xn=1, pref=[(("1", "3"), -2, "-1")],
                   inner=INNER(K_LV10_NEW, xpk=2))),
            SEQSERIES("a14"))
    rec_add("new", "new",
            SIDE(S(outer={"kernel": K_CB}, xn=1, pref=[(("1", "4"), -1, "-1/2")],
                   inner=INNER(K_LV10_NEW))),
            SEQSERIES("s4"))
    rec_add("g-level2", "gf",
            SIDE(S(outer={"kernel": K_CB}, sign=-1, geom="1/2", xn=0,
                   pref=[(("1", "16"), -1, "-1/2")],
                   inner=INNER(K_LV14_E1, 1, "4"))),
            SIDE(S(outer={"seq": "c42c22"}, xn=2)))
    rec_add("thm4-2", "Theorem 4",
            SIDE(S(outer={"kernel": K_CB}, xn=1, pref=[(("1", "4"), -2, "-1")],
                   inner=INNER(K_LV4))),
            SIDE(S(outer={"seq": "cb3"}, xn=2)))
    rec_add("thm4-3", "Theorem 4",
            SIDE(S(outer={"kernel": K_CB}, sign=-1, xn=1,
                   pref=[(("1", "-8"), -1, "-1/2")], inner=INNER(K_LV4))),
            SIDE(S(outer={"seq": "cb3"}, xn=2)))
    return ids


def pi_specs():
    ids = []

    def add_pi(id_, tag, seq, a_mult, b_mult, x, target, divergent=False, notes=""):
        if isinstance(x, QuadraticNumber):
            xq = x
        else:
            xq = QuadraticNumber.from_rational(F(x))
        one = QuadraticNumber.from_rational(1)
        rad = (one + xq * 4) * (one - xq * 4) * (one - xq * 8)
        entry = {
            "id": id_, "paperTag": tag, "kind": "pi", "defaultOrder": 0,
            "seq": seq, "A": quad_from_exact(a_mult), "B": quad_from_exact(b_mult),
            "x": quad_from_exact(xq),
            "prefactorSquared": quad_from_exact(rad) if seq == "t24" else "1",
            "target": target, "divergent": divergent,
        }
        if notes:
            entry["notes"] = notes
        ids.append(entry)

    add_pi("y10", "y10", "s4", F(60), F(15), F(1, 36), quad("0", "18", 15))
    add_pi("r28", "r28", "cb3", F(1), F(1, 6), F(1, 256), "2/3")
    add_pi("r29", "r29", "cb3", F(1), F(5, 42), F(1, 4096), "8/21")
    add_pi("rr1", "rr1", "c3c2sq", F(1), F(1, 6), F(1, 216), quad("0", "1/2", 3))
    add_pi("rr2", "rr2", "c3c2sq", F(1), F(2, 15), F(1, 1458), "9/20")
    add_pi("rr3", "rr3", "c3c2sq", F(1), F(4, 33), F(1, 3375), quad("0", "5/22", 3))
    add_pi("level2-28", "level2", "c42c22", F(1), F(3, 40), F(1, 28**4),
           quad("0", "49/360", 3))
    add_pi("level2-1584", "level2", "c42c22", F(1), F(19, 280), F(1, 1584**2),
           quad("0", "9/140", 11))
    add_pi("level2-396", "level2", "c42c22", F(1), F(1103, 26390), F(1, 396**4),
           quad("0", "9801/105560", 2))

    table1 = {
        (3, 1): (F(1, 12), F(1, 4)), (3, -1): (F(-1, 8), F(1, 2)),
        (5, 1): (F(1, 20), F(1, 4)), (5, -1): (F(-1, 16), F(2, 5)),
        (7, 1): (F(1, 32), F(5, 21)), (7, -1): (F(-1, 28), F(1, 3)),
        (13, 1): (F(1, 104), F(1, 5)), (13, -1): (F(-1, 100), F(3, 13)),
        (17, 1): (F(1, 200), F(43, 238)), (17, -1): (F(-1, 196), F(67, 340)),
    }
    for (N, sign), (x, lam) in sorted(table1.items()):
        coef, dsf = sqrt_of_fraction(F(24, N))
        name = f"table1-N{N}-{'plus' if sign > 0 else 'minus'}"
        notes = ""
        if (N, sign) == (17, 1):
            notes = ("the weight here is 43/238: the commonly printed "
                     "143/238 fails the identity at the first digit, while "
                     "43/238 certifies to over 100 digits")
        if (N, sign) == (17, -1):
            notes = ("x here is -1/196; the value 4/196 seen in some "
                     "tabulations is a misprint for 1/196")
        add_pi(name, "pi24", "t24", F(1), lam, x,
               quad("0", str(coef / 2), dsf), notes=notes)

    # N = 1 rows: genuinely divergent, kept to pin the divergence detector
    add_pi("table1-N1-plus", "pi24", "t24", F(1), F(0), F(1, 8), "1",
           divergent=True,
           notes="argument sits on the positive boundary; no finite weight "
                 "makes the series converge")
    add_pi("table1-N1-minus", "pi24", "t24", F(1), F(0), F(-1, 4), "1",
           divergent=True, notes="argument outside the disc of convergence")

    # N = 11: the quadratic pair
    x11 = QuadraticNumber.from_rational(1) / QuadraticNumber(38, 6, 33)
    lam11 = QuadraticNumber.from_rational(58) / QuadraticNumber(165, 19, 33)
    assert x11 == QuadraticNumber(F(19, 128), F(-3, 128), 33)
    coef, dsf = sqrt_of_fraction(F(24, 11))
    add_pi("table1-N11-plus", "pi24", "t24", QuadraticNumber.from_rational(1),
           lam11, x11, quad("0", str(coef / 2), dsf),
           notes="quadratic row: x = 1/(38+6*sqrt(33))")
    return ids


def numeric_specs():
    ids = []
    ids.append({
        "id": "eq520", "paperTag": "520", "kind": "numeric", "defaultOrder": 0,
        "digits": 40,
        "lhs": {"kind": "double", "scalar": "1", "multA": "5440",
                "multB": "1201", "outer": K_CB, "zBase": "-16/961",
                "inner": K_LV10_I10, "innerArg": "-1/64"},
        "rhs": {"kind": "single", "scalar": "62465/16", "multA": "1",
                "multB": "1/4", "seq": "s4", "x": "-1/64"},
        "notes": "weights (5440, 1201) at x=-1/64; the specialized outer "
                 "argument is z = x/(1+2x)^2 = -16/961 and both sides carry "
                 "the same series argument -1/64",
    })
    ids.append({
        "id": "conj212", "paperTag": "2.12-closing", "kind": "numeric",
        "defaultOrder": 0, "digits": 40,
        "lhs": {"kind": "double", "scalar": quad("0", "3/100", 3), "multA": "1",
                "multB": "-2", "outer": K_CB, "zBase": "3/50",
                "inner": K_LV6_CLEVER, "innerArg": "1/6"},
        "rhs": {"kind": "pi-target", "r": quad("0", "1/2", 3)},
    })
    ids.append({
        "id": "y10-numeric", "paperTag": "y10", "kind": "numeric",
        "defaultOrder": 0, "digits": 40,
        "lhs": {"kind": "double", "scalar": "1", "multA": "95", "multB": "13",
                "outer": None, "zBase": "1/36", "inner": K_H10,
                "innerArg": "1/36"},
        "rhs": {"kind": "single", "scalar": "60", "multA": "1", "multB": "1/4",
                "seq": "s4", "x": "1/36"},
    })
    ids.append({
        "id": "i1-divergent", "paperTag": "i1", "kind": "numeric",
        "defaultOrder": 0, "digits": 30, "expectDivergent": True,
        "lhs": {"kind": "double", "scalar": "1", "multA": "20", "multB": "7",
                "outer": K_CB, "zBase": "-1/9", "inner": K_LV4,
                "innerArg": "-1/16"},
        "rhs": {"kind": "pi-target", "r": "1"},
        "notes": "weights (20, 7) at x=-1/16 produce a divergent left side",
    })
    ids.append({
        "id": "i11-divergent", "paperTag": "i11", "kind": "numeric",
        "defaultOrder": 0, "digits": 30, "expectDivergent": True,
        "lhs": {"kind": "double", "scalar": "1", "multA": "30", "multB": "11",
                "outer": K_CB, "zBase": "-1/8", "inner": K_LV4,
                "innerArg": "1/16"},
        "rhs": {"kind": "pi-target", "r": "1"},
        "notes": "weights (30, 11) at x=1/16 produce a divergent left side",
    })
    return ids


def build_identities():
    ids = []
    ids.append({
        "id": "lemma1", "paperTag": "lemma1", "kind": "seq-equality",
        "defaultOrder": 40, "seqA": "s4", "seqB": "lemma1b",
        "modeA": "closed", "modeB": "closed",
    })
    ids.extend(series_identities())
    ids.extend(translation_sides())
    ids.append({
        "id": "lemma2-satellite", "paperTag": "lemma2", "kind": "satellite",
        "defaultOrder": 60, "kernel": "h10",
        "triple": {"P": [0, 4], "Q": [3, 12], "R": [-2, 2]},
    })
    ids.append({
        "id": "satelliteg", "paperTag": "satelliteg", "kind": "satellite",
        "defaultOrder": 60, "kernel": "level24",
        "triple": {"P": [0, 2], "Q": [2, 2], "R": [-1, 2]},
    })
    for qid in ("th", "th2", "x-symmetry", "par", "par1"):
        ids.append({"id": qid, "paperTag": qid, "kind": "q",
                    "defaultOrder": 25, "qid": qid})
    ids.append({"id": "whipple-quadratic", "paperTag": "whipple",
                "kind": "ratfun", "defaultOrder": 15, "nMax": 15})
    ids.append({"id": "trans1", "paperTag": "trans1", "kind": "trans1",
                "defaultOrder": 12, "zOrder": 12})
    ids.append({"id": "trans2-y65", "paperTag": "trans2", "kind": "trans2",
                "defaultOrder": 6, "y": "6/5", "zOrder": 6, "digits": 40})
    ids.extend(pi_specs())
    ids.extend(numeric_specs())
    ids.append({
        "id": "conj614-note", "paperTag": "6.14", "kind": "note",
        "defaultOrder": 0,
        "notes": "x=-9/20 with z=-1/216 or z=-5/216 (from y=1/5 or y=5) does "
                 "not match any discovered specialization pattern; recorded "
                 "without an attached verification",
    })
    ids.append({
        "id": "table2-row4-note", "paperTag": "table2", "kind": "note",
        "defaultOrder": 0,
        "notes": "the x=1/(t+1), z=t^2 row cites an external level-3 result "
                 "and is not a power-series specialization at x=0; no "
                 "verification attached",
    })
    return ids


def build_odes():
    """The three operators with catalog series solutions, written as
    L[y] = rhs(x) * y with ascending-degree coefficient lists."""
    from holopi.poly import poly as mkpoly

    def pp(*factors):
        acc = mkpoly(factors[0])
        for f in factors[1:]:
            acc = poly_mul(acc, mkpoly(f))
        return pstr(acc)

    return {
        "de24": {
            "coeffs": [
                pstr(()),
                pp(("1", "-28", "-116", "1536")),
                pp(("0", "3"), ("1", "-12", "-32", "320")),
                pp(("0", "0", "1"), ("1", "4"), ("1", "-4"), ("1", "-8")),
            ],
            "rhs": pp(("2",), ("1", "10", "-192")),
            "solution": "t24",
        },
        "de6": {
            "coeffs": [
                pstr(()),
                pp(("1", "-132", "972")),
                pp(("0", "3"), ("1", "-60", "288")),
                pp(("0", "0", "1"), ("1", "-4"), ("1", "-36")),
            ],
            "rhs": pp(("6",), ("1", "-18")),
            "solution": "zl6",
        },
        "par": {
            "coeffs": [
                pp(("0", "96"), ("-1", "6")),
                pp(("1", "12", "-576", "2304")),
                pp(("0", "3"), ("1", "-4"), ("1", "10", "-120")),
                pp(("0", "0", "1"), ("1", "-4"), ("1", "-4"), ("1", "12")),
            ],
            "rhs": [],
            "solution": "t6",
        },
    }


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    sequences = {"kernels": KERNELS, "sequences": build_sequences(),
                 "odes": build_odes()}
    identities = {"identities": build_identities()}
    with open(os.path.join(OUT_DIR, "sequences.json"), "w") as fh:
        json.dump(sequences, fh, indent=1)
        fh.write("\n")
    with open(os.path.join(OUT_DIR, "identities.json"), "w") as fh:
        json.dump(identities, fh, indent=1)
        fh.write("\n")
    print(f"wrote {len(sequences['sequences'])} sequences, "
          f"{len(identities['identities'])} identities")


if __name__ == "__main__":
    main()
