import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from upic.checks import les_degrees, mutated_cone
from upic.cohomology import (
    BudgetExceeded,
    CohomologyConfig,
    DegreeOutOfRange,
    bar_differential,
    group_cohomology,
    hypercohomology,
    induced_map,
    is_quasi_isomorphism,
    les_check,
    restriction_map,
    sha_omega,
    total_differential,
)
from upic.complexes import (
    ComplexMap,
    LatticeComplex,
    concentrated,
    cone,
    identity_map,
    shift,
    two_term,
)
from upic.gmodules import (
    EquivariantMap,
    character_module,
    coset_module,
    norm_one_lattice,
    regular_module,
    trivial_module,
)
from upic.groups import (
    Subgroup,
    all_subgroups,
    cyclic_subgroups,
    make_cyclic,
    make_klein,
    make_quaternion,
    make_symmetric,
    preset_groups,
)
from upic.lattice import AbelianGroupInvariants, as_matrix, identity, zeros
from upic.oracles import cyclic_cohomology
from upic.rootdata import named, pi1_dual_complex
from upic.samples import random_complex_map, random_lattice

Z = AbelianGroupInvariants
C1, C2, C3, K4, S3 = make_cyclic(1), make_cyclic(2), make_cyclic(3), make_klein(), make_symmetric(3)
SMALL = [C2, C3, make_cyclic(4), K4, S3]
seeds = st.integers(0, 2**32)


def H(G, M, i):
    return group_cohomology(G, M, i).invariants


def random_module(seed, groups=SMALL, max_rank=3):
    rng = np.random.default_rng(seed)
    G = groups[int(rng.integers(len(groups)))]
    return random_lattice(rng, G, max_rank=max_rank)


class TestBarDifferential:
    def test_degree_zero_is_stacked_augmentation(self):
        M = regular_module(C3)
        d = bar_differential(C3, M, 0)
        expected = np.vstack([a - identity(3) for a in M.action])
        assert (d == expected).all()

    @pytest.mark.parametrize("p", range(4))
    def test_trivial_group_alternates(self, p):
        M = trivial_module(C1, 2)
        d = bar_differential(C1, M, p)
        assert d.shape == (2, 2)
        assert (d == (identity(2) if p % 2 else zeros(2, 2))).all()

    def test_trivial_group_vanishing(self):
        M = trivial_module(C1, 2)
        assert H(C1, M, 0) == Z(2)
        assert all(H(C1, M, i) == Z() for i in (1, 2, 3))

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(0, 2))
    def test_square_zero(self, seed, p):
        M = random_module(seed)
        G = M.group
        assert not bar_differential(G, M, p + 1).dot(bar_differential(G, M, p)).any()

    @settings(max_examples=20, deadline=None)
    @given(seeds, st.integers(0, 2))
    def test_total_square_zero(self, seed, n):
        f = random_complex_map(np.random.default_rng(seed), SMALL[seed % len(SMALL)])
        C = cone(f)
        G = C.group
        D0 = total_differential(G, C, n - 1)
        D1 = total_differential(G, C, n)
        assert not D1.dot(D0).any()


class TestGroupCohomology:
    def test_sign_module(self):
        sign = character_module(C2, [1, -1])
        assert H(C2, sign, 1) == Z(0, (2,))
        assert H(C2, sign, 2) == Z()

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_trivial_cyclic(self, n):
        G = make_cyclic(n)
        assert H(G, trivial_module(G), 1) == Z()
        assert H(G, trivial_module(G), 2) == Z(0, (n,))

    @pytest.mark.parametrize("G", preset_groups(6), ids=lambda G: G.name)
    def test_permutation_h1_vanishes(self, G):
        for K in all_subgroups(G):
            assert H(G, coset_module(K), 1) == Z()

    def test_klein_norm_one(self):
        J = norm_one_lattice(Subgroup(K4, (0,)))
        assert H(K4, J, 0) == Z()
        assert H(K4, J, 1) == Z(0, (2, 2))
        assert H(K4, J, 2) == Z(0, (2,))
        assert H(K4, J, 2) == H(K4, trivial_module(K4), 3)

    def test_quaternion_periodicity(self):
        Q = make_quaternion()
        assert H(Q, trivial_module(Q), 2) == Z(0, (2, 2))
        assert H(Q, trivial_module(Q), 3) == Z()

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(1, 2))
    def test_cyclic_oracle(self, seed, i):
        M = random_module(seed, groups=[make_cyclic(n) for n in range(2, 7)])
        assert H(M.group, M, i) == cyclic_cohomology(M, i)

    @pytest.mark.parametrize("G", [C2, K4, S3, make_cyclic(4)], ids=lambda G: G.name)
    def test_shapiro(self, G):
        for K in all_subgroups(G):
            P = coset_module(K)
            T = K.table()
            for i in range(3):
                assert H(G, P, i) == H(T, trivial_module(T), i)

    def test_degree_bound(self):
        with pytest.raises(DegreeOutOfRange):
            group_cohomology(C2, trivial_module(C2), 4)
        with pytest.raises(DegreeOutOfRange):
            group_cohomology(C2, trivial_module(C2), -1)
        cfg = CohomologyConfig(max_degree=5)
        assert group_cohomology(C2, trivial_module(C2), 4, cfg).invariants == Z(0, (2,))

    def test_budget(self):
        with pytest.raises(BudgetExceeded) as err:
            group_cohomology(S3, regular_module(S3), 2, CohomologyConfig(budget=100))
        assert err.value.needed > 100
        with pytest.raises(BudgetExceeded):
            group_cohomology(C2, trivial_module(C2), 1, CohomologyConfig(budget=0))


class TestHypercohomology:
    @settings(max_examples=20, deadline=None)
    @given(seeds, st.integers(0, 3))
    def test_concentrated_matches_module(self, seed, i):
        M = random_module(seed)
        G = M.group
        assert hypercohomology(G, concentrated(M), i).invariants == H(G, M, i)

    def test_split_pgl2(self):
        D = pi1_dual_complex(named("PGL", 2))
        assert hypercohomology(C1, D, 1).invariants == Z(0, (2,))

    def test_quasi_split_pgl3(self):
        rd = named("PGL", 3, C2, twist="flip")
        assert hypercohomology(C2, pi1_dual_complex(rd), 1).invariants == Z()

    @settings(max_examples=15, deadline=None)
    @given(seeds, st.integers(0, 2))
    def test_shift_compatibility(self, seed, i):
        f = random_complex_map(np.random.default_rng(seed), SMALL[seed % 3])
        C = cone(f)
        G = C.group
        S = shift(C, 1)
        assert hypercohomology(G, S, C.lo - 1 + i).invariants == hypercohomology(G, C, C.lo + i).invariants

    def test_below_lowest_degree(self):
        C = concentrated(trivial_module(C2), 1)
        with pytest.raises(DegreeOutOfRange):
            hypercohomology(C2, C, 0)
        with pytest.raises(DegreeOutOfRange):
            hypercohomology(C2, C, 5)

    def test_acyclic_complex(self):
        M = regular_module(S3)
        C = two_term(EquivariantMap(M, M, identity(6)), 0)
        assert all(hypercohomology(S3, C, i).invariants == Z() for i in range(4))


class TestRestriction:
    def test_full_group_is_identity(self):
        M = trivial_module(make_cyclic(4))
        G = M.group
        res = restriction_map(G, Subgroup(G, tuple(range(4))), concentrated(M), 2)
        assert res.is_bijective()
        assert (res.matrix == identity(res.matrix.shape[0])).all()

    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_trivial_subgroup_is_zero(self, i):
        J = norm_one_lattice(Subgroup(K4, (0,)))
        res = restriction_map(K4, Subgroup(K4, (0,)), concentrated(J), i)
        assert res.target.ngens == 0

    def test_klein_restrictions_kill_sha(self):
        J = norm_one_lattice(Subgroup(K4, (0,)))
        C = concentrated(J)
        for K in cyclic_subgroups(K4):
            if K.order == 2:
                res = restriction_map(K4, K, C, 2)
                assert res.image_invariants() == Z()

    def test_restriction_of_sign_to_itself(self):
        sign = character_module(C2, [1, -1])
        res = restriction_map(C2, Subgroup(C2, (0, 1)), concentrated(sign), 1)
        assert res.is_bijective()


class TestSha:
    def test_biquadratic(self):
        J = norm_one_lattice(Subgroup(K4, (0,)))
        assert sha_omega(K4, concentrated(J), 2) == Z(0, (2,))

    @pytest.mark.parametrize("G", preset_groups(8), ids=lambda G: G.name)
    def test_permutation_modules(self, G):
        for K in all_subgroups(G):
            if G.order // K.order <= 4:
                assert sha_omega(G, concentrated(coset_module(K)), 2) == Z()

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_trivial_group(self, seed):
        M = random_module(seed, groups=[C1])
        assert sha_omega(C1, concentrated(M), 1) == Z()
        assert sha_omega(C1, concentrated(M), 2) == Z()

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_cyclic_group_has_no_sha(self, seed):
        M = random_module(seed, groups=[C2, C3, make_cyclic(4)])
        for i in (1, 2):
            assert sha_omega(M.group, concentrated(M), i) == Z()


def scalar_map(n, G=C1):
    M = trivial_module(G)
    return ComplexMap(concentrated(M), concentrated(M), {0: as_matrix([[n]])})


def flipped_dp_cone(f):
    """Cone with +d_P in place of -d_P."""
    C = cone(f)
    P = f.source
    diffs = []
    for k, d in enumerate(C.diffs):
        i = C.lo + k
        d = d.copy()
        top, left = P.rank(i + 2), P.rank(i + 1)
        d[:top, :left] = -d[:top, :left]
        diffs.append(d)
    return LatticeComplex(C.group, C.lo, C.terms, diffs)


class TestLongExactSequence:
    def test_identity(self):
        f = random_complex_map(np.random.default_rng(1), S3)
        g = identity_map(f.target)
        assert les_check(g, les_degrees(g)).ok

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_multiplication(self, n):
        f = scalar_map(n, C2)
        rep = les_check(f, les_degrees(f))
        assert rep.ok and rep.checked
        assert hypercohomology(C2, cone(f), 0).invariants == Z(0, (n,))

    @settings(max_examples=15, deadline=None)
    @given(seeds)
    def test_random_maps_exact(self, seed):
        f = random_complex_map(np.random.default_rng(seed), SMALL[seed % len(SMALL)])
        rep = les_check(f, les_degrees(f))
        assert rep.ok, rep.failure

    def test_sign_mutation_in_f_block_detected(self):
        rng = np.random.default_rng(99)
        caught = sum(
            not les_check(f, les_degrees(f), cone_fn=mutated_cone).ok
            for f in (random_complex_map(rng, SMALL[k % 5]) for k in range(10))
        )
        assert caught > 0

    def test_sign_mutation_in_dp_block_detected(self):
        rng = np.random.default_rng(100)
        for k in range(5):
            f = random_complex_map(rng, SMALL[k])
            assert not les_check(f, les_degrees(f), cone_fn=flipped_dp_cone).ok

    def test_quasi_isomorphisms(self):
        M = trivial_module(C2)
        acyclic = two_term(EquivariantMap(M, M, identity(1)), 0)
        zero = LatticeComplex(C2, 0, [], [])
        assert is_quasi_isomorphism(ComplexMap(acyclic, zero))
        f = random_complex_map(np.random.default_rng(3), C3)
        assert is_quasi_isomorphism(identity_map(f.source))
        assert not is_quasi_isomorphism(scalar_map(2, C2))

    def test_induced_map_of_multiplication(self):
        f = scalar_map(3, C2)
        # on H^2(C2, Z) = Z/2, multiplication by 3 is the identity
        assert induced_map(f, 2).is_bijective()
        # on H^0 = Z it is not surjective
        assert not induced_map(f, 0).is_surjective()
