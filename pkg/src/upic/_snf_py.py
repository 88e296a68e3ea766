"""Pure-Python Smith normal form kernel on lists of Python ints.

This is the reference kernel and the fallback when the compiled kernel is
unavailable or overflows int64.  The compiled kernel in ``_snf_ext.pyx``
follows the same elimination order, so both produce identical transforms.
"""

from __future__ import annotations


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_kernel(rows, m, n, left=True, right=True):
    """Diagonalize an ``m x n`` integer matrix given as a list of rows.

    Returns ``(diag, U, Uinv, V)`` with ``U * A * V = diag`` in Smith form.
    ``U`` and ``Uinv`` are ``None`` unless ``left``; ``V`` is ``None`` unless
    ``right``.  All matrices are lists of rows.
    """
    A = [list(r) for r in rows]
    U = _eye(m) if left else None
    UiT = _eye(m) if left else None  # rows of UiT are columns of U^-1
    VT = _eye(n) if right else None  # rows of VT are columns of V

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if left:
            U[i], U[k] = U[k], U[i]
            UiT[i], UiT[k] = UiT[k], UiT[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if right:
            VT[j], VT[k] = VT[k], VT[j]

    def add_row(i, k, c, start):
        # row_i += c * row_k
        ri, rk = A[i], A[k]
        for j in range(start, n):
            if rk[j]:
                ri[j] += c * rk[j]
        if left:
            ui, uk = U[i], U[k]
            for j in range(m):
                if uk[j]:
                    ui[j] += c * uk[j]
            wi, wk = UiT[i], UiT[k]
            for j in range(m):
                if wi[j]:
                    wk[j] -= c * wi[j]

    def add_col(j, k, c, start):
        # col_j += c * col_k
        for r in range(start, m):
            row = A[r]
            if row[k]:
                row[j] += c * row[k]
        if right:
            vj, vk = VT[j], VT[k]
            for r in range(n):
                if vk[r]:
                    vj[r] += c * vk[r]

    t = 0
    bound = min(m, n)
    while t < bound:
        best = 0
        bi = bj = -1
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    a = v if v > 0 else -v
                    if best == 0 or a < best:
                        best, bi, bj = a, i, j
                        if a == 1:
                            break
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)

        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                a = A[i][t]
                if a:
                    add_row(i, t, -(a // p), t)
                    if A[i][t]:
                        clean = False
            row_t = A[t]
            for j in range(t + 1, n):
                a = row_t[j]
                if a:
                    add_col(j, t, -(a // p), t)
                    if row_t[j]:
                        clean = False
            if clean:
                break
            # a remainder survived: bring the smallest one to the pivot
            best, bi, bj = abs(p), t, t
            for i in range(t + 1, m):
                v = abs(A[i][t])
                if v and v < best:
                    best, bi, bj = v, i, t
            for j in range(t + 1, n):
                v = abs(row_t[j])
                if v and v < best:
                    best, bi, bj = v, t, j
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
        t += 1

    rank = t
    diag = [A[i][i] for i in range(rank)]

    # enforce d_i | d_{i+1} by unimodular 2x2 moves on the diagonal
    for i in range(rank):
        for j in range(i + 1, rank):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, s, u = _xgcd(a, b)
            ag, bg = a // g, b // g
            diag[i], diag[j] = g, a * bg
            if left:
                ri, rj = U[i], U[j]
                U[i] = [s * x + u * y for x, y in zip(ri, rj)]
                U[j] = [-bg * x + ag * y for x, y in zip(ri, rj)]
                ci, cj = UiT[i], UiT[j]
                UiT[i] = [ag * x + bg * y for x, y in zip(ci, cj)]
                UiT[j] = [-u * x + s * y for x, y in zip(ci, cj)]
            if right:
                ci, cj = VT[i], VT[j]
                VT[i] = [x + y for x, y in zip(ci, cj)]
                VT[j] = [-u * bg * x + s * ag * y for x, y in zip(ci, cj)]

    for i in range(rank):
        if diag[i] < 0:
            diag[i] = -diag[i]
            if left:
                U[i] = [-x for x in U[i]]
                UiT[i] = [-x for x in UiT[i]]

    Ui = [list(col) for col in zip(*UiT)] if left and m else ([] if left else None)
    V = [list(col) for col in zip(*VT)] if right and n else ([] if right else None)
    return diag, U, Ui, V


def _xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) > 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0
