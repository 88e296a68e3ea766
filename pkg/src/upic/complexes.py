"""Bounded cochain complexes of Galois lattices.

Sign conventions:

* cone of f: P -> Q has ``P^{i+1} + Q^i`` in degree i and differential
  ``(p, q) -> (-d_P p, -f p + d_Q q)``;
* fibre of f has ``P^i + Q^{i-1}`` in degree i and differential
  ``(p, q) -> (d_P p, f p - d_Q q)``;
* the shift ``C[n]`` has ``C^{i+n}`` in degree i and differential ``(-1)^n d``.

With these, ``cone(f) == shift(fibre(f), 1)`` on the nose, fibre(P -> 0) is
P and cone(0 -> Q) is Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gmodules import EquivariantMap, GaloisLattice, direct_sum, restrict
from .lattice import as_matrix, identity, kernel_basis, solve, zeros
from .presented import PresentedMap, Subquotient, subquotient

__all__ = [
    "ComplexError",
    "LatticeComplex",
    "ComplexMap",
    "ComplexCohomology",
    "concentrated",
    "two_term",
    "cone",
    "fibre",
    "shift",
    "shift_map",
    "identity_map",
    "compose",
    "restrict_complex",
    "complex_cohomology",
    "induced_complex_cohomology_map",
]


class ComplexError(ValueError):
    pass


def _zero_module(G):
    return GaloisLattice(G, 0, [zeros(0, 0)] * G.order, check=False)


class LatticeComplex:
    """Terms ``terms[k]`` sit in degree ``lo + k``; ``diffs[k]`` maps degree lo+k to lo+k+1.

    Outside [lo, hi] every term is zero.  d o d = 0 and equivariance are
    verified on construction unless ``check=False``.
    """

    def __init__(self, group, lo, terms, diffs, check=True):
        self.group = group
        self.lo = int(lo)
        self.terms = tuple(terms)
        if len(diffs) != max(len(self.terms) - 1, 0):
            raise ComplexError("need one differential between each pair of adjacent terms")
        self.diffs = tuple(
            as_matrix(d, rows=self.terms[k + 1].rank, cols=self.terms[k].rank)
            for k, d in enumerate(diffs)
        )
        if check:
            self.validate()

    @property
    def hi(self):
        return self.lo + len(self.terms) - 1

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def term(self, i):
        if self.lo <= i <= self.hi:
            return self.terms[i - self.lo]
        return _zero_module(self.group)

    def rank(self, i):
        return self.term(i).rank if self.lo <= i <= self.hi else 0

    def differential(self, i):
        """Matrix of d^i: C^i -> C^{i+1} (zero outside the stored range)."""
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        return zeros(self.rank(i + 1), self.rank(i))

    def validate(self):
        for M in self.terms:
            if M.group != self.group:
                raise ComplexError("terms live over different groups")
        for i in range(self.lo, self.hi):
            d = self.differential(i)
            src, tgt = self.term(i), self.term(i + 1)
            for g in range(self.group.order):
                if not (d.dot(src.action[g]) == tgt.action[g].dot(d)).all():
                    raise ComplexError(f"d^{i} is not equivariant for element {g}")
        for i in range(self.lo, self.hi - 1):
            dd = self.differential(i + 1).dot(self.differential(i))
            if any(v != 0 for v in dd.ravel()):
                raise ComplexError(f"d^{i + 1} o d^{i} != 0")
        return self

    def trimmed(self):
        """Drop zero terms at both ends."""
        ranks = [M.rank for M in self.terms]
        nz = [k for k, r in enumerate(ranks) if r]
        if not nz:
            return LatticeComplex(self.group, 0, [], [], check=False)
        a, b = nz[0], nz[-1]
        return LatticeComplex(
            self.group, self.lo + a, self.terms[a : b + 1], self.diffs[a:b], check=False
        )

    def __eq__(self, other):
        if not isinstance(other, LatticeComplex):
            return NotImplemented
        s, o = self.trimmed(), other.trimmed()
        return (
            s.group == o.group
            and s.lo == o.lo
            and len(s.terms) == len(o.terms)
            and all(a == b for a, b in zip(s.terms, o.terms))
            and all((a == b).all() for a, b in zip(s.diffs, o.diffs))
        )

    __hash__ = None

    def __repr__(self):
        ranks = ", ".join(f"{i}:{self.rank(i)}" for i in self.degrees())
        return f"<LatticeComplex [{ranks}] over {self.group!r}>"


@dataclass(frozen=True, eq=False)
class ComplexMap:
    """Degreewise equivariant maps commuting with the differentials."""

    source: LatticeComplex
    target: LatticeComplex
    components: dict = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        comps = {}
        for i in self._span():
            mat = self.components.get(i)
            if mat is None:
                mat = zeros(self.target.rank(i), self.source.rank(i))
            comps[i] = as_matrix(mat, rows=self.target.rank(i), cols=self.source.rank(i))
        object.__setattr__(self, "components", comps)
        if self.check:
            self.validate()

    def _span(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 1)

    def component(self, i):
        if i in self.components:
            return self.components[i]
        return zeros(self.target.rank(i), self.source.rank(i))

    def validate(self):
        for i in self._span():
            f = self.component(i)
            EquivariantMap(self.source.term(i), self.target.term(i), f)
            lhs = self.target.differential(i).dot(f)
            rhs = self.component(i + 1).dot(self.source.differential(i))
            if not (lhs == rhs).all():
                raise ComplexError(f"map does not commute with differentials in degree {i}")
        return self


def concentrated(M, degree=0):
    """M as a complex with a single term."""
    return LatticeComplex(M.group, degree, [M], [])


def two_term(f, lo=0):
    """[source -> target] with the source in degree ``lo``."""
    return LatticeComplex(f.source.group, lo, [f.source, f.target], [f.matrix])


def _block(rows, cols, blocks):
    """Assemble a block matrix; ``blocks`` maps (r, c) block index -> matrix."""
    out = zeros(sum(rows), sum(cols))
    roff = np.concatenate([[0], np.cumsum(rows)]).astype(int)
    coff = np.concatenate([[0], np.cumsum(cols)]).astype(int)
    for (r, c), mat in blocks.items():
        out[roff[r] : roff[r + 1], coff[c] : coff[c + 1]] = mat
    return out


def cone(f):
    """Cone of f: degree i is P^{i+1} + Q^i, d = [[-d_P, 0], [-f, d_Q]]."""
    P, Q = f.source, f.target
    lo = min(P.lo - 1, Q.lo)
    hi = max(P.hi - 1, Q.hi)
    terms, diffs = [], []
    for i in range(lo, hi + 1):
        terms.append(direct_sum(P.term(i + 1), Q.term(i)))
    for i in range(lo, hi):
        rows = [P.rank(i + 2), Q.rank(i + 1)]
        cols = [P.rank(i + 1), Q.rank(i)]
        diffs.append(
            _block(rows, cols, {
                (0, 0): -P.differential(i + 1),
                (1, 0): -f.component(i + 1),
                (1, 1): Q.differential(i),
            })
        )
    return LatticeComplex(P.group, lo, terms, diffs)


def fibre(f):
    """Fibre of f: degree i is P^i + Q^{i-1}, d = [[d_P, 0], [f, -d_Q]]."""
    P, Q = f.source, f.target
    lo = min(P.lo, Q.lo + 1)
    hi = max(P.hi, Q.hi + 1)
    terms, diffs = [], []
    for i in range(lo, hi + 1):
        terms.append(direct_sum(P.term(i), Q.term(i - 1)))
    for i in range(lo, hi):
        rows = [P.rank(i + 1), Q.rank(i)]
        cols = [P.rank(i), Q.rank(i - 1)]
        diffs.append(
            _block(rows, cols, {
                (0, 0): P.differential(i),
                (1, 0): f.component(i),
                (1, 1): -Q.differential(i - 1),
            })
        )
    return LatticeComplex(P.group, lo, terms, diffs)


def shift(C, n):
    """C[n]: degree i holds C^{i+n}, differentials scaled by (-1)^n."""
    sign = -1 if n % 2 else 1
    return LatticeComplex(
        C.group, C.lo - n, C.terms, [sign * d for d in C.diffs], check=False
    )


def shift_map(f, n):
    """f[n]: same components, reindexed."""
    return ComplexMap(
        shift(f.source, n),
        shift(f.target, n),
        {i - n: m for i, m in f.components.items()},
    )


def identity_map(C):
    return ComplexMap(C, C, {i: identity(C.rank(i)) for i in C.degrees()})


def compose(f, g):
    """g after f."""
    span = range(min(f.source.lo, g.target.lo), max(f.source.hi, g.target.hi) + 1)
    return ComplexMap(f.source, g.target, {i: g.component(i).dot(f.component(i)) for i in span})


def restrict_complex(C, H):
    """The complex viewed over a subgroup H."""
    T = H.table()
    terms = [restrict(M, H) for M in C.terms]
    return LatticeComplex(T, C.lo, terms, C.diffs, check=False)


@dataclass(frozen=True, eq=False)
class ComplexCohomology:
    """H^i of a complex: invariants plus a presentation with the induced action."""

    degree: int
    presentation: Subquotient
    action: tuple

    @property
    def invariants(self):
        return self.presentation.invariants


def complex_cohomology(C, i):
    """ker d^i / im d^{i-1}, with the group action descended to generators."""
    if not C.lo <= i <= C.hi:
        raise ComplexError(f"degree {i} outside [{C.lo}, {C.hi}]")
    K = kernel_basis(C.differential(i), cols=C.rank(i))
    I = C.differential(i - 1)
    pres = subquotient(K, I)
    M = C.term(i)
    action = []
    for g in range(C.group.order):
        a = M.action[g]
        if I.shape[1] and solve(I, a.dot(I)) is None:
            raise ComplexError(f"element {g} does not preserve the coboundaries")
        moved = a.dot(pres.generators) if pres.ngens else zeros(M.rank, 0)
        action.append(as_matrix(pres.coords(moved), rows=pres.ngens, cols=pres.ngens))
    return ComplexCohomology(i, pres, tuple(action))


def induced_complex_cohomology_map(f, i):
    """Map H^i(source) -> H^i(target) induced by a complex map."""
    src = complex_cohomology(f.source, i) if f.source.lo <= i <= f.source.hi else None
    tgt = complex_cohomology(f.target, i) if f.target.lo <= i <= f.target.hi else None
    empty = Subquotient(zeros(0, 0), (), zeros(0, 0))
    s = src.presentation if src else empty
    t = tgt.presentation if tgt else empty
    if not s.ngens or not t.ngens:
        return PresentedMap(s, t, zeros(t.ngens, s.ngens))
    return PresentedMap.from_cochain_map(s, t, f.component(i))
