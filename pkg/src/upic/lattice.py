"""Exact integer linear algebra over Z.

Matrices are numpy arrays of dtype ``object`` holding Python ints, so all
arithmetic is arbitrary precision.  Columns are vectors throughout: a matrix
``A`` of shape ``(m, n)`` is the map ``Z^n -> Z^m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import _kernel

__all__ = [
    "AbelianGroupInvariants",
    "SmithDecomposition",
    "as_matrix",
    "identity",
    "zeros",
    "snf",
    "rank",
    "cokernel_invariants",
    "kernel_basis",
    "image_basis",
    "solve",
    "left_inverse",
    "subquotient_invariants",
    "inverse_unimodular",
    "is_unimodular",
    "determinant",
]


def as_matrix(data, rows=None, cols=None):
    """Coerce ``data`` to a 2-D object array of Python ints.

    Object arrays are passed through without copying; callers never mutate
    their inputs.  ``rows``/``cols`` fix the shape when ``data`` is empty.
    """
    if isinstance(data, np.ndarray) and data.ndim == 2 and data.dtype == object:
        out = data
    elif isinstance(data, np.ndarray) and data.ndim == 2 and data.dtype.kind in "iu":
        out = data.astype(object)
    else:
        arr = np.array(data, dtype=object)
        if arr.size == 0:
            if arr.ndim == 2 and rows is None and cols is None:
                return np.zeros(arr.shape, dtype=object)
            return np.zeros((rows or 0, cols or 0), dtype=object)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D integer matrix, got shape {arr.shape}")
        flat = arr.ravel()
        for k, x in enumerate(flat):
            if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
                raise TypeError(f"matrix entry {x!r} is not an integer")
            flat[k] = int(x)
        out = flat.reshape(arr.shape)
    if (rows is not None and out.shape[0] != rows) or (cols is not None and out.shape[1] != cols):
        raise ValueError(f"expected shape ({rows}, {cols}), got {out.shape}")
    return out


def identity(n):
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def zeros(m, n):
    return np.zeros((m, n), dtype=object)


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and all d_i >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {a}, {b} do not form a divisor chain")

    @classmethod
    def from_diagonal(cls, diag, ambient_rank):
        """Invariants of Z^ambient_rank / span(diag entries on the first axes)."""
        nonzero = [abs(int(d)) for d in diag if d]
        return cls.from_orders([0] * (ambient_rank - len(nonzero)) + nonzero)

    @classmethod
    def from_orders(cls, orders):
        """Canonical form of a direct sum of cyclic groups Z/o (o = 0 means Z)."""
        free = sum(1 for o in orders if o == 0)
        chain = [abs(int(o)) for o in orders if o not in (0, 1, -1)]
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                g = gcd(chain[i], chain[j])
                chain[i], chain[j] = g, chain[i] * chain[j] // g
        return cls(free, tuple(d for d in chain if d > 1))

    @property
    def order(self):
        """Group order; ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["free_rank"]), tuple(obj["torsion"]))

    def __str__(self):
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and D in Smith form."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self):
        k = min(self.D.shape)
        return [self.D[i, i] for i in range(k)]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)


def snf(A):
    """Smith normal form with both transforms."""
    A = as_matrix(A)
    m, n = A.shape
    diag, U, _, V = _kernel.smith(A, left=True, right=True)
    D = zeros(m, n)
    for i, d in enumerate(diag):
        D[i, i] = d
    return SmithDecomposition(U, D, V)


def _smith(A, left=False, right=False):
    return _kernel.smith(as_matrix(A), left=left, right=right)


def rank(A):
    A = as_matrix(A)
    if 0 in A.shape:
        return 0
    return len(_smith(A)[0])


def cokernel_invariants(A, rows=None):
    """Invariants of Z^rows / image(A)."""
    A = as_matrix(A, rows=rows)
    m, n = A.shape
    if n == 0 or m == 0:
        return AbelianGroupInvariants(m)
    diag = _smith(A)[0]
    return AbelianGroupInvariants.from_diagonal(diag, m)


def kernel_basis(A, cols=None):
    """Saturated Z-basis of {v : A v = 0} as the columns of a matrix."""
    A = as_matrix(A, cols=cols)
    m, n = A.shape
    if m == 0 or n == 0:
        return identity(n)
    diag, _, _, V = _smith(A, right=True)
    return V[:, len(diag):].copy()


def image_basis(A, rows=None):
    """Z-basis of the column span of A (columns of the result)."""
    A = as_matrix(A, rows=rows)
    m, n = A.shape
    if m == 0 or n == 0:
        return zeros(m, 0)
    diag, _, Ui, _ = _smith(A, left=True)
    out = Ui[:, : len(diag)].copy()
    for j, d in enumerate(diag):
        out[:, j] *= d
    return out


def solve(B, x):
    """Integer vector ``c`` with ``B @ c == x``, or ``None`` if none exists.

    ``x`` may be a vector or a matrix of right-hand sides (then all columns
    must be solvable).
    """
    B = as_matrix(B)
    x_arr = np.array(x, dtype=object)
    vector = x_arr.ndim == 1
    X = as_matrix(x_arr.reshape(-1, 1) if vector else x_arr, rows=B.shape[0])
    m, n = B.shape
    if n == 0 or m == 0:
        if any(v != 0 for v in X.ravel()):
            return None
        C = zeros(n, X.shape[1])
        return C[:, 0] if vector else C
    diag, U, _, V = _smith(B, left=True, right=True)
    r = len(diag)
    Y = U.dot(X)
    if any(v != 0 for v in Y[r:].ravel()):
        return None
    Z = zeros(n, X.shape[1])
    for i, d in enumerate(diag):
        for k in range(X.shape[1]):
            q, rem = divmod(Y[i, k], d)
            if rem:
                return None
            Z[i, k] = q
    C = V.dot(Z)
    return C[:, 0] if vector else C


def left_inverse(K):
    """Integer matrix L with ``L @ K == I`` for a saturated, full-column-rank K."""
    K = as_matrix(K)
    m, n = K.shape
    if n == 0:
        return zeros(0, m)
    diag, U, _, V = _smith(K, left=True, right=True)
    if len(diag) != n or any(d != 1 for d in diag):
        raise ValueError("matrix is not a saturated full-rank basis")
    return V.dot(U[:n])


def subquotient_invariants(K, I):
    """Invariants of span(K) / span(I) where span(I) lies inside span(K).

    Raises ``ValueError`` when a column of I is not an integer combination of
    the columns of K.
    """
    K = as_matrix(K)
    I = as_matrix(I, rows=K.shape[0])
    k = K.shape[1]
    if rank(K) != k:
        raise ValueError("K must have linearly independent columns")
    if I.shape[1] == 0:
        return AbelianGroupInvariants(k)
    coords = solve(K, I)
    if coords is None:
        raise ValueError("generators of I are not integer combinations of K")
    return cokernel_invariants(coords, rows=k)


def determinant(A):
    """Exact determinant via fraction-free Bareiss elimination."""
    M = as_matrix(A).tolist()
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_unimodular(U):
    """Exact inverse of a unimodular matrix."""
    U = as_matrix(U)
    n = U.shape[0]
    if U.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    if n == 0:
        return zeros(0, 0)
    diag, L, _, R = _smith(U, left=True, right=True)
    if len(diag) != n or any(d != 1 for d in diag):
        raise ValueError("matrix is not unimodular")
    # L U R = I  =>  U^-1 = R L
    return R.dot(L)


def is_unimodular(A):
    A = as_matrix(A)
    return A.shape[0] == A.shape[1] and abs(determinant(A)) == 1


def content(values):
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
