"""Group cohomology and hypercohomology of Galois lattices via bar cochains.

Cochains ``Gamma^p -> M`` are stored as one long vector: the tuple
``(g_1, ..., g_p)`` has index ``sum g_k |Gamma|^(p-k)`` and the coordinate
``j`` of its value sits at ``index * rank(M) + j``.

For a complex C the total complex has ``Tot^n = sum_q C^{n-q}(Gamma, C^q)``
(blocks ordered by increasing q) with differential ``d_bar + (-1)^p d_C``.

H^n is computed from one Smith decomposition of ``D^{n-1}``: the torsion
of H^n equals the torsion of ``Tot^n / im D^{n-1}`` because cocycles form a
saturated sublattice.  The free rank is read off rationally from the
invariant subcomplex, and free generators are only built when it is
nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from .complexes import (
    ComplexError,
    ComplexMap,
    LatticeComplex,
    cone,
    concentrated,
    fibre,
    restrict_complex,
    shift,
    shift_map,
    induced_complex_cohomology_map,
)
from .gmodules import invariants_sublattice
from .groups import cyclic_subgroups
from .lattice import (
    AbelianGroupInvariants,
    identity,
    kernel_basis,
    left_inverse,
    rank,
    subquotient_invariants,
    zeros,
)
from .presented import PresentedMap, Subquotient, is_exact, preimage

__all__ = [
    "CohomologyConfig",
    "BudgetExceeded",
    "DegreeOutOfRange",
    "CohomologyClassGroup",
    "LESReport",
    "bar_differential",
    "total_differential",
    "group_cohomology",
    "hypercohomology",
    "restriction_map",
    "induced_map",
    "sha_omega",
    "sha_omega_lattice",
    "les_check",
    "is_quasi_isomorphism",
]


@dataclass(frozen=True)
class CohomologyConfig:
    """Degree bound and the largest differential (in matrix entries) we agree to build."""

    max_degree: int = 3
    budget: int = 10**6


DEFAULT_CONFIG = CohomologyConfig()


class BudgetExceeded(RuntimeError):
    def __init__(self, needed, budget):
        super().__init__(
            f"differential with {needed} entries exceeds the budget of {budget}"
        )
        self.needed = needed
        self.budget = budget


class DegreeOutOfRange(ValueError):
    pass


# ---------------------------------------------------------------------------
# bar and total differentials


def _tuples(N, p):
    """Array of shape (N**p, p) listing all p-tuples in index order."""
    if p == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grid = np.indices((N,) * p).reshape(p, -1).T
    return grid.astype(np.int64)


def _tuple_index(T, N):
    p = T.shape[1]
    weights = N ** np.arange(p - 1, -1, -1, dtype=np.int64)
    return T.dot(weights) if p else np.zeros(T.shape[0], dtype=np.int64)


def _bar_int64(G, M, p):
    N, r = G.order, M.rank
    rows, cols = N ** (p + 1), N**p
    out = np.zeros((rows, r, cols, r), dtype=np.int64)
    if r == 0:
        return out.reshape(rows * r, cols * r)
    view = out.transpose(0, 2, 1, 3)
    T = _tuples(N, p + 1)
    target = np.arange(rows)
    mult = np.array(G.mult, dtype=np.int64)
    actions = np.array([np.array(a, dtype=np.int64) for a in M.action]).reshape(N, r, r)
    # g_1 . f(g_2, ..., g_{p+1})
    np.add.at(view, (target, _tuple_index(T[:, 1:], N)), actions[T[:, 0]])
    eye = np.eye(r, dtype=np.int64)
    for i in range(1, p + 1):
        merged = np.concatenate(
            [T[:, : i - 1], mult[T[:, i - 1], T[:, i]][:, None], T[:, i + 1 :]], axis=1
        )
        sign = -1 if i % 2 else 1
        np.add.at(view, (target, _tuple_index(merged, N)), sign * eye)
    sign = -1 if (p + 1) % 2 else 1
    np.add.at(view, (target, _tuple_index(T[:, :p], N)), sign * eye)
    return out.reshape(rows * r, cols * r)


def bar_differential(G, M, p):
    """Matrix of d: C^p(G, M) -> C^{p+1}(G, M)."""
    if p < 0:
        raise DegreeOutOfRange("bar degree must be non-negative")
    return _bar_int64(G, M, p).astype(object)


def _layout(G, C, n):
    """Blocks ``(q, p, offset, size)`` of Tot^n."""
    N = G.order
    blocks, off = [], 0
    for q in range(C.lo, min(C.hi, n) + 1):
        p = n - q
        size = N**p * C.rank(q)
        blocks.append((q, p, off, size))
        off += size
    return blocks, off


def _total_int64(G, C, n):
    src, ncols = _layout(G, C, n)
    tgt, nrows = _layout(G, C, n + 1)
    where = {(q, p): off for q, p, off, _ in tgt}
    D = np.zeros((nrows, ncols), dtype=np.int64)
    N = G.order
    for q, p, off, size in src:
        if not size:
            continue
        M = C.term(q)
        if (q, p + 1) in where:
            r0 = where[(q, p + 1)]
            D[r0 : r0 + N ** (p + 1) * M.rank, off : off + size] = _bar_int64(G, M, p)
        if q < C.hi and (q + 1, p) in where:
            d = np.array(C.differential(q), dtype=np.int64).reshape(C.rank(q + 1), M.rank)
            r0 = where[(q + 1, p)]
            block = np.kron(np.eye(N**p, dtype=np.int64), d)
            D[r0 : r0 + block.shape[0], off : off + size] = block if p % 2 == 0 else -block
    return D


def total_differential(G, C, n):
    """Matrix of D^n: Tot^n -> Tot^{n+1}."""
    return _total_int64(G, C, n).astype(object)


def _check_budget(G, C, n, config):
    needed = _layout(G, C, n)[1] * _layout(G, C, n + 1)[1]
    if needed > config.budget:
        raise BudgetExceeded(needed, config.budget)


# ---------------------------------------------------------------------------
# cohomology groups


@dataclass(frozen=True, eq=False)
class CohomologyClassGroup:
    """H^n(G, C) presented by total cocycles, their orders and a coordinate map."""

    group: object
    complex: LatticeComplex
    degree: int
    presentation: Subquotient

    @property
    def invariants(self):
        return self.presentation.invariants

    @property
    def ngens(self):
        return self.presentation.ngens

    def relations(self):
        return self.presentation.relations()


def _rational_rank(C, n):
    """rank of H^n(G, C) tensor Q, from the invariant subcomplex."""
    if not C.lo <= n <= C.hi:
        return 0
    B = {q: invariants_sublattice(C.term(q)) for q in (n - 1, n) if C.lo <= q <= C.hi}
    cycles = B[n].shape[1] - rank(C.differential(n).dot(B[n]))
    boundaries = rank(C.differential(n - 1).dot(B[n - 1])) if n - 1 in B else 0
    return cycles - boundaries


def _zero_group(G, C, n):
    size = _layout(G, C, n)[1]
    return CohomologyClassGroup(G, C, n, Subquotient(zeros(size, 0), (), zeros(0, size)))


def _compute(G, C, n, config):
    if C.group != G:
        raise ValueError("complex is not over the given group")
    if n < C.lo or not C.terms:
        return _zero_group(G, C, n)
    if n > C.hi + config.max_degree:
        raise DegreeOutOfRange(
            f"degree {n} exceeds hi + max_degree = {C.hi + config.max_degree}"
        )
    _check_budget(G, C, n - 1, config)
    m = _layout(G, C, n)[1]
    if m == 0:
        return _zero_group(G, C, n)
    Dprev = _total_int64(G, C, n - 1)
    if Dprev.shape[1]:
        diag, U, Ui, _ = _kernel.smith_native(Dprev, left=True, right=False)
    else:
        diag, U, Ui = [], np.eye(m, dtype=np.int64), np.eye(m, dtype=np.int64)
    k = len(diag)
    tors = [j for j, d in enumerate(diag) if d > 1]
    gens = np.asarray(Ui[:, tors]).astype(object)
    coords = np.asarray(U[tors]).astype(object)
    orders = [diag[j] for j in tors]
    free = _rational_rank(C, n)
    if free:
        _check_budget(G, C, n, config)
        W = np.asarray(Ui[:, k:]).astype(object)
        Dn = _total_int64(G, C, n).astype(object)
        Kf = kernel_basis(Dn.dot(W), cols=W.shape[1])
        if Kf.shape[1] != free:
            raise ArithmeticError("free rank disagrees with the rational computation")
        gens = np.hstack([gens, W.dot(Kf)])
        coords = np.vstack([coords, left_inverse(Kf).dot(np.asarray(U[k:]).astype(object))])
        orders += [0] * free
    pres = Subquotient(
        gens.reshape(m, len(orders)), tuple(orders), coords.reshape(len(orders), m)
    )
    return CohomologyClassGroup(G, C, n, pres)


def hypercohomology(G, C, i, config=None):
    """H^i(G, C) for a bounded complex, lo <= i <= hi + max_degree."""
    config = config or DEFAULT_CONFIG
    if C.terms and i < C.lo:
        raise DegreeOutOfRange(f"degree {i} is below the lowest term {C.lo}")
    return _compute(G, C, i, config)


def group_cohomology(G, M, i, config=None):
    """H^i(G, M) for a Galois lattice, 0 <= i <= max_degree."""
    config = config or DEFAULT_CONFIG
    if not 0 <= i <= config.max_degree:
        raise DegreeOutOfRange(f"degree {i} outside [0, {config.max_degree}]")
    return _compute(G, concentrated(M, 0), i, config)


# ---------------------------------------------------------------------------
# maps between cohomology groups


def _restrict_rows(G, H, C, n):
    """Row indices selecting the restriction Tot^n(G) -> Tot^n(H)."""
    elems = np.array(H.elements, dtype=np.int64)
    src = {(q, p): off for q, p, off, _ in _layout(G, C, n)[0]}
    rows = []
    for q, p, _, size in _layout(H.table(), restrict_complex(C, H), n)[0]:
        if not size:
            continue
        T = elems[_tuples(H.order, p)]
        r = C.rank(q)
        base = _tuple_index(T, G.order) * r + src[(q, p)]
        rows.append((base[:, None] + np.arange(r)[None, :]).ravel())
    return np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)


def _restriction(src, H, config):
    G, C, n = src.group, src.complex, src.degree
    CH = restrict_complex(C, H)
    tgt = _compute(H.table(), CH, n, config)
    gens = src.presentation.generators[_restrict_rows(G, H, C, n)]
    res = PresentedMap(src.presentation, tgt.presentation, _coords(tgt.presentation, gens, src.ngens))
    return res, tgt


def _coords(pres, X, k):
    if not k or not pres.ngens:
        return zeros(pres.ngens, k)
    return pres.coords(X)


def restriction_map(G, H, C, i, config=None):
    """res: H^i(G, C) -> H^i(H, C) as a map of presented groups."""
    config = config or DEFAULT_CONFIG
    src = hypercohomology(G, C, i, config)
    return _restriction(src, H, config)[0]


def _apply_chain_map(f, G, n, X):
    """Image under Tot^n(f) of total cochains (columns of X)."""
    src_blocks, _ = _layout(G, f.source, n)
    tgt_blocks, size = _layout(G, f.target, n)
    where = {(q, p): off for q, p, off, _ in tgt_blocks}
    k = X.shape[1]
    out = zeros(size, k)
    N = G.order
    for q, p, off, sz in src_blocks:
        if not sz or (q, p) not in where or not f.target.rank(q):
            continue
        r_s, r_t = f.source.rank(q), f.target.rank(q)
        block = X[off : off + sz].reshape(N**p, r_s, k)
        img = np.matmul(f.component(q), block).reshape(N**p * r_t, k)
        o = where[(q, p)]
        out[o : o + N**p * r_t] = img
    return out


def _induced(f, src, tgt):
    X = src.presentation.generators
    Y = _apply_chain_map(f, src.group, src.degree, X) if src.ngens else zeros(0, 0)
    return PresentedMap(src.presentation, tgt.presentation, _coords(tgt.presentation, Y, src.ngens))


def induced_map(f, i, config=None):
    """f_*: H^i(G, source) -> H^i(G, target) for a complex map f."""
    config = config or DEFAULT_CONFIG
    G = f.source.group
    src = _compute(G, f.source, i, config)
    tgt = _compute(G, f.target, i, config)
    return _induced(f, src, tgt)


# ---------------------------------------------------------------------------
# Sha


def sha_omega_lattice(G, C, i, config=None, source=None):
    """``(H, L)``: H = H^i(G, C) and L the generator-coordinate lattice of
    classes restricting to zero on every cyclic subgroup."""
    config = config or DEFAULT_CONFIG
    src = source or hypercohomology(G, C, i, config)
    subs = cyclic_subgroups(G)
    if any(H.order == G.order for H in subs) or not src.ngens:
        return src, src.relations()
    mats, rels = [], []
    for H in subs:
        res, _ = _restriction(src, H, config)
        mats.append(res.matrix)
        rels.append(res.target.relations())
    stacked = np.vstack(mats)
    R = zeros(stacked.shape[0], sum(r.shape[1] for r in rels))
    ro = co = 0
    for r in rels:
        R[ro : ro + r.shape[0], co : co + r.shape[1]] = r
        ro += r.shape[0]
        co += r.shape[1]
    L = preimage(stacked, R)
    return src, L


def sha_omega(G, C, i, config=None):
    """Invariants of the kernel of H^i(G, C) -> prod over cyclic H of H^i(H, C)."""
    src, L = sha_omega_lattice(G, C, i, config)
    if not src.ngens:
        return AbelianGroupInvariants()
    return subquotient_invariants(L, src.relations())


# ---------------------------------------------------------------------------
# long exact sequence and quasi-isomorphisms


@dataclass
class LESReport:
    ok: bool
    checked: list = field(default_factory=list)
    failure: str | None = None

    def __bool__(self):
        return self.ok


def les_check(f, degrees, config=None, cone_fn=cone):
    """Check the triangle P -> Q -> cone(f) -> P[1] on hypercohomology.

    Verifies that the cone is a complex equal to fibre(f)[1], that the
    inclusion (0; id) and projection (id 0) are chain maps, and exactness of
    H^i(P) -> H^i(Q) -> H^i(cone) -> H^i(P[1]) -> H^i(Q[1]) at the three
    middle terms for every i in ``degrees``.
    """
    config = config or DEFAULT_CONFIG
    P, Q = f.source, f.target
    G = P.group
    report = LESReport(True)
    try:
        Cf = cone_fn(f)
    except ComplexError as exc:
        return LESReport(False, failure=f"cone is not a complex: {exc}")
    if Cf != shift(fibre(f), 1):
        return LESReport(False, failure="cone differs from the shifted fibre")
    P1, Q1 = shift(P, 1), shift(Q, 1)
    try:
        iota = ComplexMap(Q, Cf, {
            i: np.vstack([zeros(P.rank(i + 1), Q.rank(i)), identity(Q.rank(i))])
            for i in range(Cf.lo, Cf.hi + 1)
        })
        pi = ComplexMap(Cf, P1, {
            i: np.hstack([identity(P.rank(i + 1)), zeros(P.rank(i + 1), Q.rank(i))])
            for i in range(Cf.lo, Cf.hi + 1)
        })
        f1 = shift_map(f, 1)
    except (ComplexError, ValueError) as exc:
        return LESReport(False, failure=f"triangle maps are not chain maps: {exc}")
    for i in degrees:
        HP, HQ, HC, HP1, HQ1 = (_compute(G, X, i, config) for X in (P, Q, Cf, P1, Q1))
        maps = [_induced(f, HP, HQ), _induced(iota, HQ, HC), _induced(pi, HC, HP1),
                _induced(f1, HP1, HQ1)]
        for pos, name in enumerate(("Q", "cone", "P[1]")):
            report.checked.append((i, name))
            if not is_exact(maps[pos], maps[pos + 1]):
                return LESReport(False, report.checked, f"not exact at H^{i}({name})")
    return report


def is_quasi_isomorphism(f, config=None):
    """Certificate up to the configured bound: f induces isomorphisms on every
    H^i of the complexes and on H^i(G, -) for lo <= i <= hi + max_degree."""
    config = config or DEFAULT_CONFIG
    P, Q = f.source, f.target
    lo, hi = min(P.lo, Q.lo), max(P.hi, Q.hi)
    for i in range(lo, hi + 1):
        if not induced_complex_cohomology_map(f, i).is_bijective():
            return False
    for i in range(lo, hi + config.max_degree + 1):
        if not induced_map(f, i, config).is_bijective():
            return False
    return True
