"""Reference computations that share no code with the Smith kernel.

Invariant factors come from determinantal divisors: d_1 ... d_k is the gcd
of all k x k minors, with each minor evaluated by exact rational
elimination.  Only suitable for small matrices.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np

from .lattice import AbelianGroupInvariants

__all__ = [
    "minor_determinant",
    "determinantal_invariants",
    "cyclic_cohomology",
]


def minor_determinant(rows):
    """Determinant of a square list-of-lists by Gaussian elimination over Q."""
    M = [[Fraction(int(x)) for x in r] for r in rows]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                t = M[r][c] / M[c][c]
                M[r] = [a - t * b for a, b in zip(M[r], M[c])]
    assert det.denominator == 1
    return int(det)


def determinantal_invariants(A, rows=None):
    """Invariants of Z^rows / image(A) from gcds of minors."""
    A = np.array(A, dtype=object)
    if A.ndim != 2 or A.size == 0:
        m = rows if rows is not None else (A.shape[0] if A.ndim == 2 else 0)
        return AbelianGroupInvariants(m)
    m, n = A.shape
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                g = gcd(g, minor_determinant([[A[i, j] for j in ci] for i in ri]))
                if g == divisors[-1]:
                    break
            if g == divisors[-1]:
                break
        if g == 0:
            break
        divisors.append(g)
    factors = [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]
    rank = len(factors)
    return AbelianGroupInvariants(m - rank, tuple(d for d in factors if d > 1))


def _torsion_part(inv):
    return AbelianGroupInvariants(0, inv.torsion)


def cyclic_cohomology(M, i, generator=1):
    """H^i(Z/n, M) from the two-periodic resolution, for i >= 1.

    Over Q the image of (s - 1) is all of ker N and N M is all of M^G, so
    H^odd = ker N / im(s - 1) is the torsion of coker(s - 1) and
    H^even = M^G / N M is the torsion of coker N.
    """
    if i < 1:
        raise ValueError("the periodic oracle covers positive degrees only")
    G = M.group
    r = M.rank
    s = np.array(M.action[generator], dtype=object)
    if G.element_order(generator) != G.order:
        raise ValueError("element does not generate the group")
    eye = np.eye(r, dtype=int).astype(object)
    if i % 2:
        return _torsion_part(determinantal_invariants(s - eye, rows=r))
    N = np.zeros((r, r), dtype=object)
    power = eye
    for _ in range(G.order):
        N = N + power
        power = s.dot(power)
    return _torsion_part(determinantal_invariants(N, rows=r))
