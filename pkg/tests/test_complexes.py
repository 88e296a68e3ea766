import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from upic.complexes import (
    ComplexError,
    ComplexMap,
    LatticeComplex,
    complex_cohomology,
    compose,
    concentrated,
    cone,
    fibre,
    identity_map,
    induced_complex_cohomology_map,
    shift,
    shift_map,
    two_term,
)
from upic.gmodules import EquivariantMap, character_module, regular_module, trivial_module
from upic.groups import make_cyclic, make_klein, make_symmetric
from upic.lattice import AbelianGroupInvariants, as_matrix, zeros
from upic.rootdata import named, pi1_dual_complex
from upic.samples import random_complex_map

Z = AbelianGroupInvariants
C1, C2 = make_cyclic(1), make_cyclic(2)
GROUPS = [make_cyclic(2), make_cyclic(3), make_cyclic(4), make_klein(), make_symmetric(3)]


def scalar_map(n, G=C1, lo=0):
    M = trivial_module(G)
    return ComplexMap(concentrated(M, lo), concentrated(M, lo), {lo: as_matrix([[n]])})


def all_cohomology(C):
    return [complex_cohomology(C, i).invariants for i in C.degrees()]


def acyclic(C):
    return all(h == Z() for h in all_cohomology(C))


def random_map(seed, G=None):
    rng = np.random.default_rng(seed)
    return random_complex_map(rng, G or GROUPS[seed % len(GROUPS)])


seeds = st.integers(0, 2**32)


class TestCone:
    def test_cone_of_identity_is_acyclic(self):
        f = random_map(7)
        assert acyclic(cone(identity_map(f.target)))

    def test_cone_of_zero_source(self):
        Q = random_map(3).target
        zero = LatticeComplex(Q.group, Q.lo, [], [])
        assert cone(ComplexMap(zero, Q)) == Q

    def test_cone_of_multiplication_by_two(self):
        C = cone(scalar_map(2))
        assert (C.lo, C.hi) == (-1, 0)
        assert complex_cohomology(C, -1).invariants == Z()
        assert complex_cohomology(C, 0).invariants == Z(0, (2,))

    def test_differential_sign_layout(self):
        f = scalar_map(5)
        d = cone(f).differential(-1)
        assert d[0, 0] == -5


class TestFibre:
    def test_fibre_of_zero_target(self):
        P = random_map(4).source
        zero = LatticeComplex(P.group, P.lo, [], [])
        assert fibre(ComplexMap(P, zero)) == P

    def test_fibre_of_identity_is_acyclic(self):
        assert acyclic(fibre(identity_map(random_map(11).source)))

    @pytest.mark.parametrize("n", [2, 3, 6])
    def test_fibre_of_multiplication(self, n):
        F = fibre(scalar_map(n))
        assert complex_cohomology(F, 0).invariants == Z()
        assert complex_cohomology(F, 1).invariants == Z(0, (n,))

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_cone_is_shifted_fibre(self, seed):
        f = random_map(seed)
        assert cone(f) == shift(fibre(f), 1)


class TestShift:
    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_shift_identities(self, seed):
        C = cone(random_map(seed))
        assert shift(C, 0) == C
        assert shift(shift(C, 1), -1) == C
        S = shift(C, 1)
        for i in S.degrees():
            assert complex_cohomology(S, i).invariants == complex_cohomology(C, i + 1).invariants

    def test_shift_map_commutes(self):
        f = random_map(5)
        g = shift_map(f, 3)
        assert g.source.lo == f.source.lo - 3
        assert g.validate() is g


class TestTwoTerm:
    def test_pgl2(self):
        M = trivial_module(C1)
        C = two_term(EquivariantMap(M, M, as_matrix([[2]])), 0)
        assert (C.lo, C.hi) == (0, 1)
        assert C.differential(0)[0, 0] == 2

    def test_zero_target(self):
        M = trivial_module(C1)
        empty = trivial_module(C1, 0)
        C = two_term(EquivariantMap(M, empty, zeros(0, 1)), 0)
        assert C == concentrated(M)

    def test_identity_acyclic(self):
        M = regular_module(make_cyclic(3))
        assert acyclic(two_term(EquivariantMap(M, M, np.eye(3, dtype=int)), 0))


class TestCohomology:
    @pytest.mark.parametrize(
        "family, n, expected",
        [
            ("SL", 2, [Z(), Z()]),
            ("PGL", 2, [Z(), Z(0, (2,))]),
            ("GL", 2, [Z(1), Z()]),
        ],
    )
    def test_dual_complexes(self, family, n, expected):
        assert all_cohomology(pi1_dual_complex(named(family, n))) == expected

    def test_out_of_range(self):
        C = pi1_dual_complex(named("SL", 2))
        with pytest.raises(ComplexError):
            complex_cohomology(C, 2)

    def test_descended_action(self):
        # Z -(2)-> Z with G = C2 acting by -1 on both: H^1 = Z/2, action trivial mod 2
        sign = character_module(C2, [1, -1])
        C = two_term(EquivariantMap(sign, sign, as_matrix([[2]])), 0)
        H = complex_cohomology(C, 1)
        assert H.invariants == Z(0, (2,))
        assert abs(H.action[1][0, 0]) == 1

    def test_bad_differentials_rejected(self):
        M = trivial_module(C1)
        with pytest.raises(ComplexError):
            LatticeComplex(C1, 0, [M, M, M], [as_matrix([[1]]), as_matrix([[1]])])
        sign = character_module(C2, [1, -1])
        with pytest.raises(ValueError):
            LatticeComplex(C2, 0, [sign, trivial_module(C2)], [as_matrix([[1]])])

    def test_non_chain_map_rejected(self):
        M = trivial_module(C1)
        C = two_term(EquivariantMap(M, M, as_matrix([[1]])), 0)
        with pytest.raises(ComplexError):
            ComplexMap(C, C, {0: as_matrix([[1]]), 1: as_matrix([[2]])})

    @settings(max_examples=15, deadline=None)
    @given(seeds)
    def test_composition_functorial(self, seed):
        f = random_map(seed)
        g = identity_map(f.target)
        h = compose(f, g)
        for i in f.source.degrees():
            a = induced_complex_cohomology_map(h, i)
            b = induced_complex_cohomology_map(f, i)
            assert (a.matrix == b.matrix).all()
