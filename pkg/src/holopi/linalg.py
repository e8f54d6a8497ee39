"""Exact rational linear algebra: reduced row echelon and nullspace bases."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _int_row(row):
    """Clear denominators and divide by content; keeps entries as ints."""
    denom = 1
    for c in row:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [c.numerator * (denom // c.denominator) for c in row]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def exact_nullspace(rows, ncols: int):
    """Right-nullspace basis of the rational matrix given by rows.

    Each basis vector is a tuple of Fractions with the free variable set
    to 1. Rows of zeros are ignored. No floating point anywhere.
    """
    mat = []
    for row in rows:
        r = _int_row([Fraction(c) for c in row])
        if any(r):
            mat.append([Fraction(c) for c in r])
    pivot_cols = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(mat)):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [c / pv for c in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        pivot_cols.append(col)
        rank += 1
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivot_cols):
            vec[pc] = -mat[r][f]
        basis.append(tuple(vec))
    return basis


def normalize_int_vector(vec):
    """Scale a rational vector to coprime ints, first nonzero entry > 0."""
    fracs = [Fraction(c) for c in vec]
    denom = 1
    for c in fracs:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [c.numerator * (denom // c.denominator) for c in fracs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g:
        ints = [c // g for c in ints]
    for c in ints:
        if c:
            if c < 0:
                ints = [-v for v in ints]
            break
    return tuple(ints)
