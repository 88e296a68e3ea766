"""Root data of reductive groups with a finite Galois action.

A datum stores the character lattice X (a Galois lattice of rank r), the
simple roots as the columns of an ``r x s`` matrix and the simple coroots as
the rows of an ``s x r`` matrix, so that ``coroots @ roots`` is the Cartan
matrix ``C[i, j] = <alpha_j, alpha_i^vee>``.  The group acts on the weight
lattice of the simply connected cover by permuting fundamental weights.

Semisimple presets are built in fundamental-weight coordinates: X is given
by a basis ``B`` of a lattice between the root lattice and the weight
lattice, so ``rho^* = B`` and the roots are ``B^-1 C``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cohomology import DEFAULT_CONFIG, hypercohomology, sha_omega
from .complexes import ComplexMap, complex_cohomology, concentrated, two_term
from .gmodules import (
    EquivariantMap,
    GaloisLattice,
    ModuleError,
    coset_module,
    dual_module,
    norm_one_lattice,
    trivial_module,
    validate_module,
)
from .groups import Subgroup, group_from_permutations, make_cyclic, make_symmetric
from .lattice import (
    AbelianGroupInvariants,
    as_matrix,
    cokernel_invariants,
    determinant,
    identity,
    image_basis,
    solve,
    zeros,
)

__all__ = [
    "RootDatumError",
    "RootDatum",
    "Pi1Presentation",
    "InvariantReport",
    "FAMILIES",
    "LEVEL_NOTE",
    "validate_root_datum",
    "cartan_matrix",
    "cartan_type",
    "named",
    "pi1",
    "pi1_dual_complex",
    "dual_complex_map",
    "invariant_report",
]

LEVEL_NOTE = "computed at level Γ"


class RootDatumError(ValueError):
    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


@dataclass(frozen=True, eq=False)
class RootDatum:
    X: GaloisLattice
    roots: np.ndarray
    coroots: np.ndarray
    weight_action: tuple
    name: str = ""
    cartan_type: str = ""

    @property
    def group(self):
        return self.X.group

    @property
    def rank(self):
        return self.X.rank

    @property
    def semisimple_rank(self):
        return self.coroots.shape[0]

    def cartan(self):
        return self.coroots.dot(self.roots)

    @property
    def rho_star(self):
        """X -> weight lattice, x -> (<x, alpha_i^vee>)_i."""
        return self.coroots

    def weight_lattice(self):
        return GaloisLattice(self.group, self.semisimple_rank, self.weight_action, check=False)


# ---------------------------------------------------------------------------
# Cartan matrices


def _realization(letter, s):
    """Simple roots (columns) and coroots (rows) in epsilon coordinates."""
    if letter == "A":
        dim = s + 1
        R = zeros(dim, s)
        for i in range(s):
            R[i, i], R[i + 1, i] = 1, -1
        return R, R.T.copy()
    dim = s
    R = zeros(dim, s)
    for i in range(s - 1):
        R[i, i], R[i + 1, i] = 1, -1
    K = R.T.copy()
    last = s - 1
    if letter == "B":
        R[last, last], K[last, last] = 1, 2
    elif letter == "C":
        R[last, last], K[last, last] = 2, 1
    elif letter == "D":
        if s < 2:
            raise RootDatumError("type D needs rank >= 2")
        R[last - 1, last] = R[last, last] = 1
        K[last, last - 1] = K[last, last] = 1
    else:
        raise RootDatumError(f"unsupported root system type {letter}")
    return R, K


def cartan_matrix(letter, s):
    R, K = _realization(letter, s)
    return K.dot(R)


def _components(C):
    s = C.shape[0]
    seen, comps = set(), []
    for start in range(s):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(s):
                if j not in seen and (C[i, j] or C[j, i]):
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _symmetrizer(C, comp):
    """Positive d with d_i C_ij = d_j C_ji on a tree-shaped component, else None."""
    d = {comp[0]: Fraction(1)}
    edges = 0
    stack = [comp[0]]
    while stack:
        i = stack.pop()
        for j in comp:
            if j != i and C[i, j]:
                if j not in d:
                    d[j] = d[i] * Fraction(int(C[i, j]), int(C[j, i]))
                    stack.append(j)
    for i in comp:
        for j in comp:
            if i < j and C[i, j]:
                edges += 1
                if d[i] * C[i, j] != d[j] * C[j, i]:
                    return None
    if edges != len(comp) - 1:
        return None
    return d


def _component_type(C, comp):
    k = len(comp)
    deg = {i: sum(1 for j in comp if j != i and C[i, j]) for i in comp}
    mult = {(i, j): int(C[i, j]) * int(C[j, i]) for i in comp for j in comp if i != j and C[i, j]}
    top = max(mult.values(), default=0)
    if top == 3:
        return "G2"
    if top == 2:
        if k == 4 and all(deg[i] <= 2 for i in comp):
            (i, j) = next(e for e, v in mult.items() if v == 2)
            if deg[i] == 2 and deg[j] == 2:
                return "F4"
        if k == 2:
            i, j = comp[1], comp[0]
        else:
            (i, j) = next(e for e, v in mult.items() if v == 2 and deg[e[0]] == 1)
        # leaf i is short (type B) when <alpha_nbr, alpha_i^vee> = -2
        return f"B{k}" if C[i, j] == -2 else f"C{k}"
    branch = [i for i in comp if deg[i] == 3]
    if not branch:
        return f"A{k}"
    b = branch[0]
    arms = []
    for nb in (j for j in comp if j != b and C[b, j]):
        length, prev, cur = 1, b, nb
        while True:
            nxt = [j for j in comp if j not in (prev, cur) and C[cur, j]]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == arms[1] == 1:
        return f"D{k}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return f"E{k}"
    return "?"


def cartan_type(C):
    """Dynkin type label such as ``A2`` or ``A1xB2``; raises for non-finite type."""
    C = as_matrix(C)
    s = C.shape[0]
    if s == 0:
        return ""
    for i in range(s):
        if C[i, i] != 2:
            raise RootDatumError(f"<alpha_{i}, alpha_{i}^vee> = {C[i, i]}, expected 2", (i,))
    for i in range(s):
        for j in range(s):
            if i == j:
                continue
            if C[i, j] > 0:
                raise RootDatumError(f"Cartan entry ({i}, {j}) is positive", (i, j))
            if (C[i, j] == 0) != (C[j, i] == 0):
                raise RootDatumError(f"Cartan entries ({i}, {j}) and ({j}, {i}) disagree on zero", (i, j))
            if C[i, j] * C[j, i] > 3:
                raise RootDatumError(f"Cartan product at ({i}, {j}) exceeds 3", (i, j))
    labels = []
    for comp in _components(C):
        d = _symmetrizer(C, comp)
        if d is None:
            raise RootDatumError(f"component {comp} is not of finite type", tuple(comp))
        den = 1
        for v in d.values():
            den = den * v.denominator // np.gcd(den, v.denominator)
        S = [[int(d[i] * den) * C[i, j] for j in comp] for i in comp]
        for k in range(1, len(comp) + 1):
            if determinant([row[:k] for row in S[:k]]) <= 0:
                raise RootDatumError(f"component {comp} is not of finite type", tuple(comp))
        label = _component_type(C, comp)
        if label == "?":
            raise RootDatumError(f"component {comp} is not of finite type", tuple(comp))
        labels.append(label)
    return "x".join(sorted(labels))


# ---------------------------------------------------------------------------
# validation


def _permutation_matrix(perm):
    n = len(perm)
    P = zeros(n, n)
    for j, i in enumerate(perm):
        P[i, j] = 1
    return P


def _root_permutation(A, roots):
    s = roots.shape[1]
    moved = A.dot(roots)
    perm = []
    for i in range(s):
        hits = [j for j in range(s) if (moved[:, i] == roots[:, j]).all()]
        if not hits:
            return None
        perm.append(hits[0])
    return perm


def validate_root_datum(X, roots, coroots, name=""):
    """Check the root datum axioms and derive the action on fundamental weights."""
    r = X.rank
    roots = as_matrix(roots, rows=r)
    s = roots.shape[1]
    coroots = as_matrix(coroots, rows=s, cols=r)
    C = coroots.dot(roots)
    label = cartan_type(C)
    G = X.group
    weight_action = []
    for g in range(G.order):
        A = X.action[g]
        perm = _root_permutation(A, roots) if s else []
        if perm is None or sorted(perm) != list(range(s)):
            raise RootDatumError(f"element {g} does not permute the simple roots", (g,))
        Pi = _permutation_matrix(perm)
        if not (coroots.dot(A) == Pi.dot(coroots)).all():
            raise RootDatumError(
                f"element {g} does not permute the simple coroots compatibly", (g,)
            )
        weight_action.append(Pi)
    return RootDatum(X, roots, coroots, tuple(weight_action), name, label)


# ---------------------------------------------------------------------------
# named data

FAMILIES = (
    "SL", "GL", "PGL", "Sp", "PGSp", "SO", "Spin", "PSO",
    "torus", "norm_one_torus", "quasi_trivial_torus",
)


def _semisimple_shape(family, n):
    """(letter, rank, lattice) for a semisimple family, lattice in {P, Q, SO}."""
    if family in ("SL", "PGL"):
        if n is None or n < 2:
            raise RootDatumError(f"{family}_n needs n >= 2")
        return "A", n - 1, "P" if family == "SL" else "Q"
    if family in ("Sp", "PGSp"):
        if n is None or n < 2 or n % 2:
            raise RootDatumError(f"{family}_n needs even n >= 2")
        return "C", n // 2, "P" if family == "Sp" else "Q"
    if family in ("SO", "Spin"):
        if n is None or n < 3:
            raise RootDatumError(f"{family}_n needs n >= 3")
        if n % 2:
            return "B", n // 2, "Q" if family == "SO" else "P"
        return "D", n // 2, "SO" if family == "SO" else "P"
    if family == "PSO":
        if n is None or n < 4 or n % 2:
            raise RootDatumError("PSO_n needs even n >= 4")
        return "D", n // 2, "Q"
    raise RootDatumError(
        f"unsupported family {family!r}; supported: {', '.join(FAMILIES)}"
    )


def _lattice_basis(letter, s, kind):
    C = cartan_matrix(letter, s)
    if kind == "P":
        return identity(s)
    if kind == "Q":
        return C
    # SO_{2m}: root lattice plus epsilon_1, whose weight coordinates are <e_1, alpha_i^vee>
    _, K = _realization(letter, s)
    e1 = K[:, :1]
    return image_basis(np.hstack([C, e1]), rows=s)


def _find_generator(G):
    for g in range(G.order):
        if G.element_order(g) == G.order:
            return g
    return None


def _cyclic_hom(G, image_of_generator, compose, unit, same=lambda a, b: a == b):
    """Images of all elements under the hom sending a generator to the given value."""
    g0 = _find_generator(G)
    if g0 is None:
        raise RootDatumError(f"named twists need a cyclic group or explicit data; got {G!r}")
    out = [None] * G.order
    x, val = 0, unit
    for _ in range(G.order):
        out[x] = val
        x = G.mult[x][g0]
        val = compose(image_of_generator, val)
    if not same(val, unit):
        raise RootDatumError("twist order does not divide the group order")
    return out


def _compose_perm(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def _diagram_perms(letter, s, G, twist):
    ident = tuple(range(s))
    if twist is None:
        return [ident] * G.order
    if isinstance(twist, str):
        if twist == "flip":
            if letter == "A" and s >= 2:
                sigma = tuple(s - 1 - i for i in range(s))
            elif letter == "D" and s >= 3:
                sigma = tuple(range(s - 2)) + (s - 1, s - 2)
            else:
                raise RootDatumError(f"no diagram flip for type {letter}{s}")
            return _cyclic_hom(G, sigma, _compose_perm, ident)
        if twist == "triality":
            if letter != "D" or s != 4:
                raise RootDatumError("triality needs type D4")
            rot = (2, 1, 3, 0)  # 0 -> 2 -> 3 -> 0, centre 1 fixed
            if G == make_symmetric(3):
                _, elems = group_from_permutations(
                    [(1, 0, 2), (1, 2, 0)], name="S3"
                )
                nodes = (0, 2, 3)
                out = []
                for p in elems:
                    img = list(range(4))
                    for a in range(3):
                        img[nodes[a]] = nodes[p[a]]
                    out.append(tuple(img))
                return out
            return _cyclic_hom(G, rot, _compose_perm, ident)
        raise RootDatumError(f"unknown twist {twist!r}; use 'flip', 'triality' or permutations")
    perms = [tuple(int(x) for x in p) for p in twist]
    if len(perms) != G.order:
        raise RootDatumError(f"expected {G.order} diagram permutations, got {len(perms)}")
    for g, p in enumerate(perms):
        if sorted(p) != list(range(s)):
            raise RootDatumError(f"twist of element {g} is not a permutation of the simple roots", (g,))
    for g in range(G.order):
        for h in range(G.order):
            if _compose_perm(perms[g], perms[h]) != perms[G.mult[g][h]]:
                raise RootDatumError(f"twist is not a homomorphism at ({g}, {h})", (g, h))
    return perms


def _semisimple(family, n, G, twist):
    letter, s, kind = _semisimple_shape(family, n)
    C = cartan_matrix(letter, s)
    B = _lattice_basis(letter, s, kind)
    perms = _diagram_perms(letter, s, G, twist)
    action = []
    for g, p in enumerate(perms):
        Pi = _permutation_matrix(p)
        if not (Pi.dot(C) == C.dot(Pi)).all():
            raise RootDatumError(f"twist of element {g} is not a diagram automorphism", (g,))
        A = solve(B, Pi.dot(B))
        if A is None:
            raise RootDatumError(
                f"twist of element {g} does not preserve the character lattice of {family}{n}", (g,)
            )
        action.append(A)
    X = GaloisLattice(G, s, action)
    roots = solve(B, C)
    return validate_root_datum(X, roots, B, name=f"{family}{n}")


def _gl(n, G, twist):
    if n is None or n < 1:
        raise RootDatumError("GL_n needs n >= 1")
    R, K = _realization("A", n - 1)
    if twist is None:
        action = [identity(n)] * G.order
    elif twist == "flip":
        F = zeros(n, n)
        for i in range(n):
            F[n - 1 - i, i] = -1
        same = lambda a, b: bool((a == b).all())
        action = _cyclic_hom(G, F, lambda a, b: a.dot(b), identity(n), same)
    else:
        raise RootDatumError("GL supports the 'flip' twist only")
    X = GaloisLattice(G, n, action)
    return validate_root_datum(X, R, K, name=f"GL{n}")


def named(family, n=None, group=None, twist=None, subgroup=None, action=None):
    """Standard root datum for ``family`` over the finite group ``group``.

    Tori accept an explicit ``action`` (one matrix per element); norm-one and
    quasi-trivial tori use ``Z[G/H]`` for the subgroup ``H`` (default trivial).
    """
    G = group if group is not None else make_cyclic(1)
    if family == "GL":
        return _gl(n, G, twist)
    if family == "torus":
        if action is not None:
            X = validate_module(G, action)
        else:
            X = trivial_module(G, n if n is not None else 1)
        return validate_root_datum(X, zeros(X.rank, 0), zeros(0, X.rank), name=f"torus{X.rank}")
    if family in ("norm_one_torus", "quasi_trivial_torus"):
        H = subgroup if subgroup is not None else Subgroup(G, (0,))
        X = norm_one_lattice(H) if family == "norm_one_torus" else coset_module(H)
        return validate_root_datum(X, zeros(X.rank, 0), zeros(0, X.rank), name=family)
    return _semisimple(family, n, G, twist)


# ---------------------------------------------------------------------------
# fundamental group and the dual complex


@dataclass(frozen=True, eq=False)
class Pi1Presentation:
    """X_* modulo the coroot lattice, with the dual action on X_*."""

    cocharacters: GaloisLattice
    relations: np.ndarray

    @property
    def invariants(self):
        return cokernel_invariants(self.relations, rows=self.cocharacters.rank)

    def coinvariants(self):
        M = self.cocharacters
        blocks = [self.relations] + [a - identity(M.rank) for a in M.action[1:]]
        return cokernel_invariants(np.hstack(blocks), rows=M.rank)


def pi1(rd):
    Xs = dual_module(rd.X)
    rel = rd.coroots.T.copy()
    for g in range(rd.group.order):
        if rel.shape[1] and solve(rel, Xs.action[g].dot(rel)) is None:
            raise RootDatumError(f"coroot lattice is not stable under element {g}", (g,))
    return Pi1Presentation(Xs, rel)


def pi1_dual_complex(rd):
    """[X -> weights] with X in degree 0; a torus gives X alone."""
    if rd.semisimple_rank == 0:
        return concentrated(rd.X, 0)
    return two_term(EquivariantMap(rd.X, rd.weight_lattice(), rd.rho_star), 0)


def dual_complex_map(source, target, char_map, weight_map=None):
    """Complex map pi1^D(source) -> pi1^D(target) extending ``char_map`` on X.

    The degree-1 component is the unique integral psi with
    ``psi rho_source = rho_target char_map``.
    """
    phi = as_matrix(char_map, rows=target.rank, cols=source.rank)
    P, Q = pi1_dual_complex(source), pi1_dual_complex(target)
    rhs = target.rho_star.dot(phi)
    if weight_map is None:
        if source.semisimple_rank == 0:
            if any(v != 0 for v in rhs.ravel()):
                raise RootDatumError("character map does not kill the target coroots")
            psi = zeros(target.semisimple_rank, 0)
        else:
            sol = solve(source.rho_star.T, rhs.T)
            if sol is None:
                raise RootDatumError("no integral weight map compatible with the character map")
            psi = sol.T.copy()
    else:
        psi = as_matrix(weight_map, rows=target.semisimple_rank, cols=source.semisimple_rank)
    if not (psi.dot(source.rho_star) == rhs).all():
        raise RootDatumError("weight map does not commute with rho^*")
    try:
        return ComplexMap(P, Q, {0: phi, 1: psi})
    except ModuleError as exc:
        raise RootDatumError(str(exc), exc.witness) from exc


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class InvariantReport:
    name: str
    cartan_type: str
    galois_order: int
    U_rank: int
    Pic_bar: AbelianGroupInvariants
    Pic: AbelianGroupInvariants | None
    Br_a: AbelianGroupInvariants | None
    Sha1_omega: AbelianGroupInvariants | None
    Sha2_omega: AbelianGroupInvariants | None
    level_note: str = LEVEL_NOTE

    def to_json(self):
        enc = lambda v: None if v is None else v.to_json()
        return {
            "name": self.name,
            "cartan_type": self.cartan_type or None,
            "galois_order": self.galois_order,
            "U_rank": self.U_rank,
            "Pic_bar": enc(self.Pic_bar),
            "Pic": enc(self.Pic),
            "Br_a": enc(self.Br_a),
            "Sha1_omega": enc(self.Sha1_omega),
            "Sha2_omega": enc(self.Sha2_omega),
            "level_note": self.level_note,
        }

    @classmethod
    def from_json(cls, obj):
        dec = lambda v: None if v is None else AbelianGroupInvariants.from_json(v)
        return cls(
            obj["name"],
            obj["cartan_type"] or "",
            obj["galois_order"],
            obj["U_rank"],
            dec(obj["Pic_bar"]),
            dec(obj["Pic"]),
            dec(obj["Br_a"]),
            dec(obj["Sha1_omega"]),
            dec(obj["Sha2_omega"]),
            obj["level_note"],
        )


def invariant_report(rd, config=None, sha=True):
    config = config or DEFAULT_CONFIG
    G = rd.group
    D = pi1_dual_complex(rd)
    U = complex_cohomology(D, 0).invariants
    Pic_bar = complex_cohomology(D, 1).invariants if D.hi >= 1 else AbelianGroupInvariants()

    def bounded(fn, i):
        # degrees past hi + max_degree are reported as missing
        if i > D.hi + config.max_degree:
            return None
        return fn(i)

    Pic = bounded(lambda i: hypercohomology(G, D, i, config).invariants, 1)
    Br = bounded(lambda i: hypercohomology(G, D, i, config).invariants, 2)
    s1 = bounded(lambda i: sha_omega(G, D, i, config), 1) if sha else None
    s2 = bounded(lambda i: sha_omega(G, D, i, config), 2) if sha else None
    return InvariantReport(rd.name, rd.cartan_type, G.order, U.free_rank, Pic_bar, Pic, Br, s1, s2)
