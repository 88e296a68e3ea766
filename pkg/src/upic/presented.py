"""Finitely generated abelian groups presented as subquotients of Z^n.

A :class:`Subquotient` is ker/im inside an ambient lattice, recorded by
generator vectors with their orders and a coordinate matrix that reads off
the class of any cycle.  :class:`PresentedMap` is a homomorphism between two
of them; kernels, images and exactness are decided with lattice arithmetic
in generator coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import (
    AbelianGroupInvariants,
    as_matrix,
    identity,
    image_basis,
    kernel_basis,
    left_inverse,
    solve,
    subquotient_invariants,
    zeros,
)
from . import _kernel

__all__ = [
    "Subquotient",
    "PresentedMap",
    "subquotient",
    "lattice_contains",
    "lattice_equal",
    "preimage",
    "is_exact",
]


@dataclass(frozen=True, eq=False)
class Subquotient:
    """Group generated by ``generators[:, j]`` with ``orders[j]`` (0 = infinite).

    ``coordinates @ x`` reduced modulo ``orders`` gives the class of a cycle x
    in these generators.
    """

    generators: np.ndarray
    orders: tuple[int, ...]
    coordinates: np.ndarray

    @property
    def ngens(self):
        return len(self.orders)

    @property
    def ambient_dim(self):
        return self.generators.shape[0]

    @property
    def invariants(self):
        return AbelianGroupInvariants.from_orders(list(self.orders))

    def relations(self):
        """Basis of the relation lattice inside Z^ngens."""
        cols = [j for j, d in enumerate(self.orders) if d]
        R = zeros(self.ngens, len(cols))
        for k, j in enumerate(cols):
            R[j, k] = self.orders[j]
        return R

    def reduce(self, y):
        y = np.array(y, dtype=object).reshape(-1)
        for j, d in enumerate(self.orders):
            if d:
                y[j] %= d
        return y

    def coords(self, x):
        """Class of the cycle(s) ``x`` (vector or matrix of columns)."""
        X = np.array(x, dtype=object)
        if X.ndim == 1:
            return self.reduce(self.coordinates.dot(X))
        Y = self.coordinates.dot(X)
        for j, d in enumerate(self.orders):
            if d:
                Y[j] %= d
        return Y


def subquotient(K, I):
    """ker/im presentation of span(K) / span(I), with K a saturated basis."""
    K = as_matrix(K)
    n, k = K.shape
    I = as_matrix(I, rows=n)
    Kinv = left_inverse(K)
    R = Kinv.dot(I) if I.shape[1] else zeros(k, 0)
    if I.shape[1] and not (K.dot(R) == I).all():
        raise ValueError("image is not contained in the kernel lattice")
    if k == 0:
        return Subquotient(zeros(n, 0), (), zeros(0, n))
    diag, U, Ui, _ = _kernel.smith(R, left=True, right=False) if R.shape[1] else (
        [], identity(k), identity(k), None
    )
    orders = list(diag) + [0] * (k - len(diag))
    keep = [j for j, d in enumerate(orders) if d != 1]
    gens = K.dot(Ui[:, keep]) if keep else zeros(n, 0)
    coords = U[keep].dot(Kinv) if keep else zeros(0, n)
    return Subquotient(gens, tuple(orders[j] for j in keep), coords)


def lattice_contains(L, X):
    """Whether every column of X lies in the Z-span of the columns of L."""
    X = as_matrix(X)
    if X.shape[1] == 0:
        return True
    return solve(as_matrix(L, rows=X.shape[0]), X) is not None


def lattice_equal(L1, L2):
    return lattice_contains(L1, L2) and lattice_contains(L2, L1)


def preimage(M, L):
    """Basis of {x : M x in span(L)}."""
    M = as_matrix(M)
    m, n = M.shape
    L = as_matrix(L, rows=m)
    if n == 0:
        return zeros(0, 0)
    stacked = np.hstack([M, L]) if L.shape[1] else M
    K = kernel_basis(stacked, cols=n + L.shape[1])
    return image_basis(K[:n], rows=n)


@dataclass(frozen=True, eq=False)
class PresentedMap:
    """Homomorphism ``source -> target`` acting on generator coordinates."""

    source: Subquotient
    target: Subquotient
    matrix: np.ndarray

    @classmethod
    def from_cochain_map(cls, source, target, phi):
        """Induced by a cycle-level linear map ``phi`` (matrix or ``None`` = identity)."""
        G = source.generators if phi is None else as_matrix(phi).dot(source.generators)
        M = target.coords(G) if source.ngens else zeros(target.ngens, 0)
        return cls(source, target, as_matrix(M, rows=target.ngens, cols=source.ngens))

    def kernel_lattice(self):
        """Sublattice of Z^ngens(source) mapping into the target relations."""
        L = preimage(self.matrix, self.target.relations())
        return L

    def image_lattice(self):
        return image_basis(np.hstack([self.matrix, self.target.relations()]), rows=self.target.ngens)

    def kernel_invariants(self):
        return subquotient_invariants(self.kernel_lattice(), self.source.relations())

    def image_invariants(self):
        return subquotient_invariants(self.image_lattice(), self.target.relations())

    def is_injective(self):
        return lattice_contains(self.source.relations(), self.kernel_lattice())

    def is_surjective(self):
        return lattice_contains(self.image_lattice(), identity(self.target.ngens))

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def restricted_is_bijective(self, source_lattice, target_lattice):
        """Whether the map induces a bijection source_lattice/rel -> target_lattice/rel."""
        Ls = as_matrix(source_lattice, rows=self.source.ngens)
        Lt = as_matrix(target_lattice, rows=self.target.ngens)
        Rs, Rt = self.source.relations(), self.target.relations()
        image = self.matrix.dot(Ls) if Ls.shape[1] else zeros(self.target.ngens, 0)
        if not lattice_contains(Lt, image):
            return False
        image_plus = np.hstack([image, Rt])
        if not lattice_contains(image_plus, Lt):
            return False
        # injective on Ls/Rs: elements of Ls mapping into Rt must lie in Rs
        K = preimage(image, Rt)
        inside = Ls.dot(K) if K.shape[1] else zeros(self.source.ngens, 0)
        return lattice_contains(Rs, inside)

    def compose(self, other):
        """``other`` after ``self``."""
        return PresentedMap(self.source, other.target, other.matrix.dot(self.matrix))


def is_exact(first, second):
    """Exactness of A -first-> B -second-> C at B."""
    im = first.image_lattice()
    ker = second.kernel_lattice()
    return lattice_equal(im, ker)
