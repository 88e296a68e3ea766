"""The acceptance suite: ten exact checks shared by ``upic selftest`` and pytest."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .cohomology import (
    DEFAULT_CONFIG,
    BudgetExceeded,
    group_cohomology,
    hypercohomology,
    les_check,
    sha_omega,
    sha_omega_lattice,
    _induced,
    _restriction,
)
from .complexes import ComplexMap, LatticeComplex, complex_cohomology, concentrated, cone, shift, two_term
from .gmodules import EquivariantMap, coset_module, norm_one_lattice, trivial_module
from .groups import (
    Subgroup,
    all_subgroups,
    cyclic_subgroups,
    make_cyclic,
    make_klein,
    make_symmetric,
    preset_groups,
)
from .lattice import AbelianGroupInvariants, cokernel_invariants, identity
from .oracles import cyclic_cohomology, determinantal_invariants
from .presented import lattice_contains
from .rootdata import RootDatumError, named, pi1, pi1_dual_complex
from .samples import (
    lattice_pool,
    permutation_pool,
    random_complex_map,
    random_equivariant,
    random_lattice,
)

__all__ = ["CheckResult", "CHECKS", "run_check", "run_all", "mutated_cone", "les_degrees"]


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s)"


class _Failure(Exception):
    pass


def _expect(cond, message):
    if not cond:
        raise _Failure(message)


def _inv(free=0, *torsion):
    return AbelianGroupInvariants(free, tuple(torsion))


ZERO = AbelianGroupInvariants()


def simply_connected_vanishing(config):
    C2 = make_cyclic(2)
    cases = [("SL", n, None, None) for n in range(2, 6)]
    cases += [("Sp", 4, None, None), ("Spin", 5, None, None), ("Spin", 8, None, None)]
    cases += [("SL", 3, C2, "flip"), ("SL", 4, C2, "flip")]
    for fam, n, G, tw in cases:
        rd = named(fam, n, G, tw)
        D = pi1_dual_complex(rd)
        for i in (0, 1):
            got = complex_cohomology(D, i).invariants
            _expect(got == ZERO, f"{rd.name} twist={tw}: H^{i} = {got}")
        _expect(pi1(rd).invariants == ZERO, f"{rd.name}: pi1 nonzero")
    return f"{len(cases)} data, H^0 = H^1 = 0"


def picard_of_closure(config):
    cases = [("PGL", n, _inv(0, n)) for n in range(2, 7)]
    cases += [("SO", n, _inv(0, 2)) for n in range(3, 8)]
    cases += [("PGSp", 4, _inv(0, 2)), ("SO", 8, _inv(0, 2)), ("PSO", 8, _inv(0, 2, 2))]
    cases += [("PSO", 10, _inv(0, 4))]
    for fam, n, expected in cases:
        rd = named(fam, n)
        got = cokernel_invariants(rd.rho_star)
        oracle = determinantal_invariants(rd.rho_star)
        _expect(got == oracle == expected, f"{fam}{n}: {got} vs oracle {oracle}, expected {expected}")
        _expect(complex_cohomology(pi1_dual_complex(rd), 1).invariants == got, f"{fam}{n}: H^1 mismatch")
    return f"{len(cases)} data match the minor-gcd oracle"


def gl_profile(config):
    from .rootdata import invariant_report

    for n in (2, 3, 4):
        rep = invariant_report(named("GL", n), config, sha=False)
        got = (rep.U_rank, rep.Pic_bar, rep.Pic, rep.Br_a)
        _expect(got == (1, ZERO, ZERO, ZERO), f"GL{n}: {got}")
    return "GL2..GL4: U rank 1, Pic_bar = Pic = Br_a = 0"


def cyclic_norm_one(config):
    for n in range(2, 7):
        G = make_cyclic(n)
        X = norm_one_lattice(Subgroup(G, (0,)))
        h1 = group_cohomology(G, X, 1, config).invariants
        oracle = cyclic_cohomology(trivial_module(G), 2)
        _expect(h1 == oracle == _inv(0, n), f"Z/{n}: H^1 = {h1}, oracle H^2(Z) = {oracle}")
    return "H^1(Z/n, X) = Z/n = H^2(Z/n, Z) for n = 2..6"


def biquadratic_sha(config):
    K = make_klein()
    J = norm_one_lattice(Subgroup(K, (0,)))
    C = concentrated(J)
    src, L = sha_omega_lattice(K, C, 2, config)
    sha = sha_omega(K, C, 2, config)
    _expect(sha == _inv(0, 2), f"Sha^2 = {sha}")
    order_two = [H for H in cyclic_subgroups(K) if H.order == 2]
    _expect(len(order_two) == 3, "expected three subgroups of order 2")
    for H in order_two:
        res, _ = _restriction(src, H, config)
        _expect(
            lattice_contains(res.target.relations(), res.matrix.dot(L)),
            f"restriction to {H.elements} does not kill Sha",
        )
    h2 = group_cohomology(K, J, 2, config).invariants
    h3 = group_cohomology(K, trivial_module(K), 3, config).invariants
    _expect(h2 == h3, f"H^2(J) = {h2} but H^3(Z) = {h3}")
    for H in order_two:
        T = H.table()
        _expect(cyclic_cohomology(trivial_module(T), 3) == ZERO, "H^3 of a cyclic group is nonzero")
    return f"Sha^2 = Z/2 inside H^2 = {h2} = H^3(Z); 3 restrictions vanish"


def permutation_laws(config):
    count = 0
    for G in preset_groups(8):
        for H in all_subgroups(G):
            P = coset_module(H)
            h1 = group_cohomology(G, P, 1, config).invariants
            _expect(h1 == ZERO, f"{G.name}, H={H.elements}: H^1 = {h1}")
            s2 = sha_omega(G, concentrated(P), 2, config)
            _expect(s2 == ZERO, f"{G.name}, H={H.elements}: Sha^2 = {s2}")
            T = H.table()
            for i in (0, 1, 2):
                lhs = group_cohomology(G, P, i, config).invariants
                rhs = group_cohomology(T, trivial_module(T), i, config).invariants
                _expect(lhs == rhs, f"Shapiro fails for {G.name}, H={H.elements}, i={i}")
            count += 1
    return f"{count} pairs (G, H): H^1 = 0, Sha^2 = 0, Shapiro for i <= 2"


def _sign_test_groups():
    return [make_cyclic(2), make_cyclic(3), make_cyclic(4), make_klein(), make_symmetric(3)]


def mutated_cone(f):
    """Cone with the sign of the f-block flipped: a complex, but the wrong one."""
    C = cone(f)
    P = f.source
    diffs = []
    for k, d in enumerate(C.diffs):
        i = C.lo + k
        d = d.copy()
        top, left = P.rank(i + 2), P.rank(i + 1)
        d[top:, :left] = -d[top:, :left]
        diffs.append(d)
    return LatticeComplex(C.group, C.lo, C.terms, diffs)


def les_degrees(f):
    return range(min(f.source.lo, f.target.lo) - 1, max(f.source.hi, f.target.hi) + 2)


def sign_integrity(config, cases=50, seed=20240611):
    rng = np.random.default_rng(seed)
    groups = _sign_test_groups()
    caught = 0
    for k in range(cases):
        f = random_complex_map(rng, groups[k % len(groups)])
        rep = les_check(f, les_degrees(f), config)
        _expect(rep.ok, f"case {k}: {rep.failure}")
        if not les_check(f, les_degrees(f), config, cone_fn=mutated_cone).ok:
            caught += 1
    _expect(caught > 0, "the sign mutation went undetected")
    return f"{cases} triangles exact; mutation caught in {caught}/{cases}"


def compactification(config, cases=50, seed=20240612):
    rng = np.random.default_rng(seed)
    groups = _sign_test_groups()
    nontrivial = 0
    for k in range(cases):
        G = groups[k % len(groups)]
        perms = permutation_pool(G, 4)
        P = perms[int(rng.integers(len(perms)))]
        N = random_lattice(rng, G, 3, 1, lattice_pool(G, 3))
        phi = EquivariantMap(P, N, random_equivariant(rng, P, N))
        F = two_term(phi, 0)
        Nshift = shift(concentrated(N, 0), -1)
        inc = ComplexMap(Nshift, F, {1: identity(N.rank)})
        src = hypercohomology(G, Nshift, 2, config)
        tgt = hypercohomology(G, F, 2, config)
        m = _induced(inc, src, tgt)
        _expect(m.is_injective(), f"case {k}: H^1(N) -> H^2(F) not injective")
        _, Ls = sha_omega_lattice(G, Nshift, 2, config, source=src)
        _, Lt = sha_omega_lattice(G, F, 2, config, source=tgt)
        s1 = sha_omega(G, concentrated(N), 1, config)
        s2 = sha_omega(G, F, 2, config)
        _expect(s1 == s2, f"case {k}: Sha^1(N) = {s1}, Sha^2(F) = {s2}")
        _expect(m.restricted_is_bijective(Ls, Lt), f"case {k}: Sha map not bijective")
        nontrivial += not s1.is_trivial
    return f"{cases} models: injective on H^1, bijective on Sha ({nontrivial} with Sha != 0)"


def _semisimple_presets():
    base = [("SL", n) for n in range(2, 6)] + [("PGL", n) for n in range(2, 7)]
    base += [("Sp", 4), ("PGSp", 4), ("Sp", 6), ("PGSp", 6)]
    base += [("SO", n) for n in range(3, 9)] + [("Spin", n) for n in range(5, 9)]
    base += [("PSO", 8), ("PSO", 10)]
    twists = [(None, None), (make_cyclic(2), "flip"), (make_cyclic(4), "flip"),
              (make_cyclic(3), "triality"), (make_symmetric(3), "triality")]
    for fam, n in base:
        for G, tw in twists:
            try:
                yield named(fam, n, G, tw)
            except RootDatumError:
                continue


def kottwitz(config):
    count = 0
    for rd in _semisimple_presets():
        G = rd.group
        h1 = hypercohomology(G, pi1_dual_complex(rd), 1, config).invariants
        coinv = pi1(rd).coinvariants()
        _expect(coinv.free_rank == 0, f"{rd.name}: infinite coinvariants")
        _expect(h1 == coinv, f"{rd.name} over {G.name}: H^1 = {h1}, dual coinvariants {coinv}")
        count += 1
    return f"{count} twisted semisimple data"


def cyclic_oracle(config, per_group=20, seed=20240613):
    rng = np.random.default_rng(seed)
    total = 0
    for n in range(1, 7):
        G = make_cyclic(n)
        pool = lattice_pool(G, 3)
        for _ in range(per_group):
            M = random_lattice(rng, G, 3, 1, pool)
            for i in (1, 2):
                bar = group_cohomology(G, M, i, config).invariants
                ref = cyclic_cohomology(M, i) if n > 1 else ZERO
                _expect(bar == ref, f"Z/{n}, rank {M.rank}, i={i}: bar {bar} vs oracle {ref}")
            total += 1
    return f"{total} lattices agree in degrees 1 and 2"


CHECKS = [
    (1, "simply connected vanishing", simply_connected_vanishing),
    (2, "Pic of the closure equals X*(Z)", picard_of_closure),
    (3, "GL_n profile", gl_profile),
    (4, "cyclic norm-one torus", cyclic_norm_one),
    (5, "biquadratic Sha", biquadratic_sha),
    (6, "permutation-module laws", permutation_laws),
    (7, "sign-convention integrity", sign_integrity),
    (8, "compactification model", compactification),
    (9, "semisimple duality cross-check", kottwitz),
    (10, "cyclic resolution oracle", cyclic_oracle),
]


def run_check(number, config=None):
    config = config or DEFAULT_CONFIG
    num, name, fn = CHECKS[number - 1]
    start = time.perf_counter()
    try:
        detail, ok = fn(config), True
    except _Failure as exc:
        detail, ok = str(exc), False
    except BudgetExceeded as exc:
        detail, ok = f"budget exceeded: {exc}", False
    return CheckResult(num, name, ok, detail, time.perf_counter() - start)


def run_all(config=None):
    return [run_check(k, config) for k in range(1, len(CHECKS) + 1)]
