"""Galois lattices: free Z-modules of finite rank with a finite group action.

The action is stored for every group element, as integer matrices acting on
column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import Subgroup
from .lattice import (
    as_matrix,
    cokernel_invariants,
    determinant,
    identity,
    inverse_unimodular,
    kernel_basis,
    snf,
    zeros,
)

__all__ = [
    "ModuleError",
    "GaloisLattice",
    "EquivariantMap",
    "validate_module",
    "trivial_module",
    "character_module",
    "permutation_module",
    "coset_module",
    "regular_module",
    "quotient_module",
    "norm_one_lattice",
    "direct_sum",
    "dual_module",
    "invariants_sublattice",
    "coinvariants",
    "restrict",
    "equivariant_average",
]


class ModuleError(ValueError):
    """A violated module law; ``witness`` holds the offending group elements."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class GaloisLattice:
    """Z^rank with the group acting through ``action[g]``.

    Construct through :func:`validate_module`, which checks the laws, or pass
    ``check=False`` for matrices already known to be valid.
    """

    __slots__ = ("group", "rank", "action")

    def __init__(self, group, rank, action, check=True):
        self.group = group
        self.rank = int(rank)
        self.action = tuple(as_matrix(a, rows=self.rank, cols=self.rank) for a in action)
        if len(self.action) != group.order:
            raise ModuleError(
                f"expected {group.order} action matrices, got {len(self.action)}"
            )
        if check:
            _check_laws(self)

    def __repr__(self):
        return f"<GaloisLattice rank {self.rank} over {self.group!r}>"

    def __eq__(self, other):
        return (
            isinstance(other, GaloisLattice)
            and self.group == other.group
            and self.rank == other.rank
            and all((a == b).all() for a, b in zip(self.action, other.action))
        )

    __hash__ = None

    def is_trivial_action(self):
        I = identity(self.rank)
        return all((a == I).all() for a in self.action)


def _check_laws(M):
    G = M.group
    I = identity(M.rank)
    if not (M.action[0] == I).all():
        raise ModuleError("identity element does not act trivially", (0,))
    for g in range(G.order):
        if abs(determinant(M.action[g])) != 1:
            raise ModuleError(f"action of element {g} is not invertible over Z", (g,))
    for g in range(G.order):
        for h in range(G.order):
            if not (M.action[g].dot(M.action[h]) == M.action[G.mult[g][h]]).all():
                raise ModuleError(
                    f"action is not a homomorphism at ({g}, {h})", (g, h)
                )


def validate_module(group, action, rank=None):
    """Build a GaloisLattice from per-element matrices, checking every law."""
    mats = [as_matrix(a) for a in action]
    if rank is None:
        rank = mats[0].shape[0] if mats else 0
    for g, a in enumerate(mats):
        if a.shape != (rank, rank):
            raise ModuleError(f"action of element {g} has shape {a.shape}", (g,))
    return GaloisLattice(group, rank, mats)


@dataclass(frozen=True, eq=False)
class EquivariantMap:
    """A Z-linear map source -> target commuting with the action."""

    source: GaloisLattice
    target: GaloisLattice
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "matrix", as_matrix(self.matrix, rows=self.target.rank, cols=self.source.rank)
        )
        if self.source.group != self.target.group:
            raise ModuleError("source and target are modules over different groups")
        for g in range(self.source.group.order):
            lhs = self.matrix.dot(self.source.action[g])
            rhs = self.target.action[g].dot(self.matrix)
            if not (lhs == rhs).all():
                raise ModuleError(f"map is not equivariant for element {g}", (g,))


def trivial_module(G, rank=1):
    return GaloisLattice(G, rank, [identity(rank)] * G.order, check=False)


def character_module(G, signs):
    """Rank-one lattice where element g acts by ``signs[g]`` (a +-1 character)."""
    return validate_module(G, [[[s]] for s in signs], rank=1)


def permutation_module(G, coset_action):
    """Lattice with basis permuted by ``coset_action[g]`` (images of each point)."""
    perms = [tuple(p) for p in coset_action]
    if len(perms) != G.order:
        raise ModuleError(f"expected {G.order} permutations, got {len(perms)}")
    degree = len(perms[0]) if perms else 0
    mats = []
    for g, p in enumerate(perms):
        if sorted(p) != list(range(degree)):
            raise ModuleError(f"image list of element {g} is not a permutation", (g,))
        P = zeros(degree, degree)
        for i, j in enumerate(p):
            P[j, i] = 1
        mats.append(P)
    for g in range(G.order):
        for h in range(G.order):
            gh = G.mult[g][h]
            if any(perms[g][perms[h][i]] != perms[gh][i] for i in range(degree)):
                raise ModuleError(f"permutation action is not a homomorphism at ({g}, {h})", (g, h))
    return GaloisLattice(G, degree, mats, check=False)


def left_cosets(H):
    """Left cosets gH of a subgroup, each as a sorted tuple, ordered by least element."""
    G = H.parent
    cosets = {tuple(sorted(G.mult[g][h] for h in H.elements)) for g in range(G.order)}
    return sorted(cosets)


def coset_module(H):
    """Z[G/H] for a subgroup H of G."""
    G = H.parent
    cosets = left_cosets(H)
    where = {x: i for i, c in enumerate(cosets) for x in c}
    perms = [tuple(where[G.mult[g][c[0]]] for c in cosets) for g in range(G.order)]
    return permutation_module(G, perms)


def regular_module(G):
    return coset_module(Subgroup(G, (0,)))


def quotient_module(M, sub):
    """M / span(sub) for a saturated, stable sublattice with basis ``sub``.

    Returns ``(Q, proj)`` where ``proj`` is the projection matrix M -> Q.
    """
    S = as_matrix(sub, rows=M.rank)
    k = S.shape[1]
    if k == 0:
        return M, identity(M.rank)
    dec = snf(S)
    diag = dec.diagonal
    if sum(1 for d in diag if d) != k or any(d != 1 for d in diag):
        raise ModuleError("sublattice basis is not saturated of full rank")
    U = dec.U
    Ui = inverse_unimodular(U)
    proj = U[k:]
    section = Ui[:, k:]
    action = [proj.dot(a).dot(section) for a in M.action]
    for g, a in enumerate(M.action):
        moved = a.dot(S)
        if any(v != 0 for v in proj.dot(moved).ravel()):
            raise ModuleError(f"sublattice is not stable under element {g}", (g,))
    Q = GaloisLattice(M.group, M.rank - k, action, check=False)
    return Q, proj


def norm_one_lattice(H):
    """Z[G/H] / (norm element): the character lattice of a norm-one torus."""
    P = coset_module(H)
    norm = as_matrix([[1]] * P.rank, rows=P.rank, cols=1)
    return quotient_module(P, norm)[0]


def direct_sum(*modules):
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    G = modules[0].group
    n = sum(M.rank for M in modules)
    action = []
    for g in range(G.order):
        A = zeros(n, n)
        k = 0
        for M in modules:
            A[k : k + M.rank, k : k + M.rank] = M.action[g]
            k += M.rank
        action.append(A)
    return GaloisLattice(G, n, action, check=False)


def dual_module(M):
    """Hom(M, Z) with g acting by the inverse transpose."""
    G = M.group
    action = [M.action[G.inverse[g]].T.copy() for g in range(G.order)]
    return GaloisLattice(G, M.rank, action, check=False)


def _augmentation_blocks(M):
    I = identity(M.rank)
    return [a - I for a in M.action[1:]]


def invariants_sublattice(M):
    """Saturated basis (columns) of M^G."""
    blocks = _augmentation_blocks(M)
    if not blocks:
        return identity(M.rank)
    return kernel_basis(np.vstack(blocks), cols=M.rank)


def coinvariants(M):
    """Invariants of M / <g m - m>."""
    blocks = _augmentation_blocks(M)
    if not blocks:
        return cokernel_invariants(zeros(M.rank, 0), rows=M.rank)
    return cokernel_invariants(np.hstack(blocks), rows=M.rank)


def restrict(M, H):
    """M as a module over the subgroup H, reindexed so H's identity is 0."""
    T = H.table()
    return GaloisLattice(T, M.rank, [M.action[g] for g in H.elements], check=False)


def equivariant_average(S, T, A):
    """Sum over g of T(g) A S(g)^-1: an equivariant map S -> T."""
    G = S.group
    A = as_matrix(A, rows=T.rank, cols=S.rank)
    out = zeros(T.rank, S.rank)
    for g in range(G.order):
        out = out + T.action[g].dot(A).dot(S.action[G.inverse[g]])
    return EquivariantMap(S, T, out)


def change_basis(M, P):
    """The same module in the basis given by the columns of unimodular P."""
    Pinv = inverse_unimodular(as_matrix(P, rows=M.rank, cols=M.rank))
    return GaloisLattice(M.group, M.rank, [Pinv.dot(a).dot(P) for a in M.action], check=False)
