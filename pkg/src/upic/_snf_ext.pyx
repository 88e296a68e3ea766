# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Smith normal form kernel on int64 arrays.

Same elimination order as ``_snf_py.smith_kernel``.  Every multiply and add
is overflow-checked; on overflow ``OverflowError`` is raised and the caller
reruns the exact big-integer kernel.
"""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

cdef extern from *:
    bint add_ovf "__builtin_saddll_overflow"(i64 a, i64 b, i64 *res) nogil
    bint mul_ovf "__builtin_smulll_overflow"(i64 a, i64 b, i64 *res) nogil


cdef inline i64 fdiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef int axpy(i64[:] y, i64[:] x, i64 c, Py_ssize_t start, Py_ssize_t stop) nogil:
    """y[start:stop] += c * x[start:stop]; returns 1 on overflow."""
    cdef Py_ssize_t j
    cdef i64 prod, s
    for j in range(start, stop):
        if x[j] != 0:
            if mul_ovf(c, x[j], &prod):
                return 1
            if add_ovf(y[j], prod, &s):
                return 1
            y[j] = s
    return 0


cdef int combine(i64[:] x, i64[:] y, i64 a, i64 b, i64 c, i64 d, Py_ssize_t n) nogil:
    """(x, y) <- (a*x + b*y, c*x + d*y) elementwise; returns 1 on overflow."""
    cdef Py_ssize_t j
    cdef i64 p1, p2, s1, s2
    for j in range(n):
        if mul_ovf(a, x[j], &p1) or mul_ovf(b, y[j], &p2) or add_ovf(p1, p2, &s1):
            return 1
        if mul_ovf(c, x[j], &p1) or mul_ovf(d, y[j], &p2) or add_ovf(p1, p2, &s2):
            return 1
        x[j] = s1
        y[j] = s2
    return 0


cdef void swap_rows(i64[:, :] M, Py_ssize_t i, Py_ssize_t k) nogil:
    cdef Py_ssize_t j
    cdef i64 tmp
    for j in range(M.shape[1]):
        tmp = M[i, j]
        M[i, j] = M[k, j]
        M[k, j] = tmp


cdef void swap_cols(i64[:, :] M, Py_ssize_t i, Py_ssize_t k) nogil:
    cdef Py_ssize_t r
    cdef i64 tmp
    for r in range(M.shape[0]):
        tmp = M[r, i]
        M[r, i] = M[r, k]
        M[r, k] = tmp


cdef inline i64 iabs(i64 v) nogil:
    return -v if v < 0 else v


def _xgcd(a, b):
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def smith_kernel_int64(cnp.ndarray A_in, bint left=True, bint right=True):
    """Return ``(diag, U, Uinv, V)`` as int64 arrays (or ``None``)."""
    cdef cnp.ndarray A_arr = np.ascontiguousarray(A_in, dtype=np.int64).copy()
    cdef Py_ssize_t m = A_arr.shape[0], n = A_arr.shape[1]
    cdef i64[:, :] A = A_arr
    cdef cnp.ndarray U_arr = np.eye(m, dtype=np.int64) if left else np.zeros((0, 0), dtype=np.int64)
    cdef cnp.ndarray W_arr = np.eye(m, dtype=np.int64) if left else np.zeros((0, 0), dtype=np.int64)
    cdef cnp.ndarray V_arr = np.eye(n, dtype=np.int64) if right else np.zeros((0, 0), dtype=np.int64)
    cdef i64[:, :] U = U_arr
    cdef i64[:, :] W = W_arr  # rows are columns of U^-1
    cdef i64[:, :] V = V_arr  # rows are columns of V
    cdef Py_ssize_t t = 0, bound = min(m, n), i, j, r, bi, bj
    cdef i64 best, v, p, q, a
    cdef bint clean

    while t < bound:
        best = 0
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, n):
                v = iabs(A[i, j])
                if v != 0 and (best == 0 or v < best):
                    best = v
                    bi = i
                    bj = j
                    if v == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            swap_rows(A, t, bi)
            if left:
                swap_rows(U, t, bi)
                swap_rows(W, t, bi)
        if bj != t:
            swap_cols(A, t, bj)
            if right:
                swap_rows(V, t, bj)

        while True:
            p = A[t, t]
            clean = True
            for i in range(t + 1, m):
                a = A[i, t]
                if a != 0:
                    q = -fdiv(a, p)
                    if axpy(A[i], A[t], q, t, n):
                        raise OverflowError
                    if left:
                        if axpy(U[i], U[t], q, 0, m) or axpy(W[t], W[i], -q, 0, m):
                            raise OverflowError
                    if A[i, t] != 0:
                        clean = False
            for j in range(t + 1, n):
                a = A[t, j]
                if a != 0:
                    q = -fdiv(a, p)
                    if axpy(A[:, j], A[:, t], q, t, m):
                        raise OverflowError
                    if right:
                        if axpy(V[j], V[t], q, 0, n):
                            raise OverflowError
                    if A[t, j] != 0:
                        clean = False
            if clean:
                break
            best = iabs(p)
            bi = t
            bj = t
            for i in range(t + 1, m):
                v = iabs(A[i, t])
                if v != 0 and v < best:
                    best = v
                    bi = i
                    bj = t
            for j in range(t + 1, n):
                v = iabs(A[t, j])
                if v != 0 and v < best:
                    best = v
                    bi = t
                    bj = j
            if bi != t:
                swap_rows(A, t, bi)
                if left:
                    swap_rows(U, t, bi)
                    swap_rows(W, t, bi)
            if bj != t:
                swap_cols(A, t, bj)
                if right:
                    swap_rows(V, t, bj)
        t += 1

    cdef Py_ssize_t rank = t
    diag = [int(A[i, i]) for i in range(rank)]

    for i in range(rank):
        for j in range(i + 1, rank):
            a_, b_ = diag[i], diag[j]
            if b_ % a_ == 0:
                continue
            g, s, u = _xgcd(a_, b_)
            ag, bg = a_ // g, b_ // g
            diag[i], diag[j] = g, a_ * bg
            if left:
                if combine(U[i], U[j], s, u, -bg, ag, m):
                    raise OverflowError
                if combine(W[i], W[j], ag, bg, -u, s, m):
                    raise OverflowError
            if right:
                if combine(V[i], V[j], 1, 1, -u * bg, s * ag, n):
                    raise OverflowError

    for i in range(rank):
        if diag[i] < 0:
            diag[i] = -diag[i]
            if left:
                for j in range(m):
                    U[i, j] = -U[i, j]
                    W[i, j] = -W[i, j]

    return (
        diag,
        U_arr if left else None,
        W_arr.T.copy() if left else None,
        V_arr.T.copy() if right else None,
    )
