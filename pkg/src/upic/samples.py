"""Seeded random lattices, equivariant maps and complex maps for property checks."""

from __future__ import annotations

import numpy as np

from .complexes import ComplexMap, LatticeComplex
from .gmodules import (
    GaloisLattice,
    character_module,
    change_basis,
    coset_module,
    direct_sum,
    dual_module,
    equivariant_average,
    norm_one_lattice,
    trivial_module,
)
from .groups import all_subgroups
from .lattice import as_matrix, identity, zeros

__all__ = [
    "lattice_pool",
    "permutation_pool",
    "random_lattice",
    "random_equivariant",
    "random_unimodular",
    "random_complex_map",
]


def _sign_characters(G):
    out = []
    for H in all_subgroups(G):
        if 2 * H.order == G.order:
            members = set(H.elements)
            out.append(character_module(G, [1 if g in members else -1 for g in range(G.order)]))
    return out


def lattice_pool(G, max_rank=3):
    """Indecomposable-ish building blocks of rank <= max_rank."""
    pool = [trivial_module(G)] + _sign_characters(G)
    for H in all_subgroups(G):
        index = G.order // H.order
        if 1 < index <= max_rank:
            pool.append(coset_module(H))
        if 2 < index <= max_rank + 1:
            J = norm_one_lattice(H)
            pool += [J, dual_module(J)]
    return pool


def permutation_pool(G, max_degree=4):
    return [coset_module(H) for H in all_subgroups(G) if G.order // H.order <= max_degree]


def random_unimodular(rng, n, steps=4):
    U = identity(n)
    for _ in range(steps if n > 1 else 0):
        i, j = rng.choice(n, size=2, replace=False)
        U[i] = U[i] + int(rng.integers(-2, 3)) * U[j]
    return U


def random_lattice(rng, G, max_rank=3, min_rank=1, pool=None):
    """Direct sum of pool members, in a random basis."""
    pool = pool or lattice_pool(G, max_rank)
    target = int(rng.integers(min_rank, max_rank + 1))
    parts, total = [], 0
    for _ in range(8):
        fits = [M for M in pool if total + M.rank <= target]
        if not fits or total >= target:
            break
        M = fits[int(rng.integers(len(fits)))]
        parts.append(M)
        total += M.rank
    if not parts:
        return GaloisLattice(G, 0, [zeros(0, 0)] * G.order, check=False)
    M = direct_sum(*parts)
    return change_basis(M, random_unimodular(rng, M.rank))


def random_equivariant(rng, S, T, bound=2):
    """Reynolds average of a random small integer matrix."""
    A = as_matrix(rng.integers(-bound, bound + 1, size=(T.rank, S.rank)).astype(object), rows=T.rank, cols=S.rank)
    return equivariant_average(S, T, A).matrix


def _nonzero(M):
    return any(v != 0 for v in M.ravel())


def random_complex_map(rng, G, max_rank=3, attempts=20):
    """A chain map P -> Q between two-term complexes in degrees [0, 1].

    Q = [Q0 -> Q1]; P1 = Q1 + E, d_P = (d_Q a, e), f = (a, projection),
    plus a null-homotopic part built from a random s: P1 -> Q0.  Draws are
    repeated until d_P and f are both nonzero, when that is possible.
    """
    pool = lattice_pool(G, max_rank)
    for _ in range(attempts):
        f = _draw_complex_map(rng, G, max_rank, pool)
        if _nonzero(f.source.differential(0)) and _nonzero(f.component(0)):
            break
    return f


def _draw_complex_map(rng, G, max_rank, pool):
    Q0 = random_lattice(rng, G, max_rank, 1, pool)
    Q1 = random_lattice(rng, G, max_rank - 1, 1, pool)
    dQ = random_equivariant(rng, Q0, Q1)
    P0 = random_lattice(rng, G, max_rank, 1, pool)
    E = random_lattice(rng, G, max_rank - Q1.rank, 0, pool)
    a = random_equivariant(rng, P0, Q0)
    e = random_equivariant(rng, P0, E)
    P1 = direct_sum(Q1, E) if E.rank else Q1
    dP = np.vstack([dQ.dot(a), e]) if E.rank else dQ.dot(a)
    f0, f1 = a, np.hstack([identity(Q1.rank), zeros(Q1.rank, E.rank)])
    s = random_equivariant(rng, P1, Q0)
    f0 = f0 + s.dot(dP)
    f1 = f1 + dQ.dot(s)
    P = LatticeComplex(G, 0, [P0, P1], [dP])
    Q = LatticeComplex(G, 0, [Q0, Q1], [dQ])
    return ComplexMap(P, Q, {0: f0, 1: f1})
