import numpy as np
import pytest

from upic.cohomology import CohomologyConfig, hypercohomology
from upic.complexes import complex_cohomology, compose, concentrated, identity_map, induced_complex_cohomology_map
from upic.gmodules import trivial_module, validate_module
from upic.groups import Subgroup, make_cyclic, make_klein, make_symmetric
from upic.lattice import AbelianGroupInvariants, as_matrix, cokernel_invariants, identity
from upic.rootdata import (
    FAMILIES,
    InvariantReport,
    RootDatumError,
    cartan_matrix,
    cartan_type,
    dual_complex_map,
    invariant_report,
    named,
    pi1,
    pi1_dual_complex,
    validate_root_datum,
)

Z = AbelianGroupInvariants
C1, C2, C3, K4, S3 = make_cyclic(1), make_cyclic(2), make_cyclic(3), make_klein(), make_symmetric(3)

SIMPLY_CONNECTED = [
    ("SL", 2, C1, None),
    ("SL", 3, C1, None),
    ("SL", 4, C1, None),
    ("SL", 5, C1, None),
    ("SL", 3, C2, "flip"),
    ("SL", 4, C2, "flip"),
    ("SL", 5, C2, "flip"),
    ("Sp", 4, C1, None),
    ("Spin", 5, C1, None),
    ("Spin", 8, C1, None),
    ("Spin", 8, C2, "flip"),
    ("Spin", 8, C3, "triality"),
    ("Spin", 8, S3, "triality"),
]

SEMISIMPLE = SIMPLY_CONNECTED + [
    ("PGL", 2, C1, None),
    ("PGL", 4, C2, "flip"),
    ("PGSp", 4, C1, None),
    ("SO", 5, C1, None),
    ("SO", 8, C2, "flip"),
    ("PSO", 8, C3, "triality"),
    ("PSO", 10, C2, "flip"),
]


def ident(*args):
    return "-".join(str(a) for a in args if a is not None and not hasattr(a, "mult"))


def cohomology(C):
    return [complex_cohomology(C, i).invariants for i in C.degrees()]


class TestValidation:
    def test_a1_simply_connected(self):
        X = trivial_module(C1)
        rd = validate_root_datum(X, as_matrix([[2]]), as_matrix([[1]]))
        assert rd.cartan_type == "A1"
        assert (rd.cartan() == as_matrix([[2]])).all()

    def test_bad_pairing(self):
        X = trivial_module(C1)
        with pytest.raises(RootDatumError):
            validate_root_datum(X, as_matrix([[3]]), as_matrix([[1]]))

    def test_a2_flip(self):
        rd = named("SL", 3, C2, twist="flip")
        A = rd.X.action[1]
        assert not (A == identity(2)).all()
        assert (rd.weight_action[1] == as_matrix([[0, 1], [1, 0]])).all()

    def test_action_must_permute_roots(self):
        X = validate_module(C2, [identity(1), -identity(1)])
        with pytest.raises(RootDatumError) as err:
            validate_root_datum(X, as_matrix([[2]]), as_matrix([[1]]))
        assert err.value.witness == (1,)

    @pytest.mark.parametrize(
        "letter, s, label",
        [("A", 3, "A3"), ("B", 3, "B3"), ("C", 3, "C3"), ("D", 4, "D4"), ("B", 2, "B2"), ("C", 2, "C2")],
    )
    def test_cartan_labels(self, letter, s, label):
        assert cartan_type(cartan_matrix(letter, s)) == label

    def test_product_type(self):
        C = np.zeros((3, 3), dtype=object)
        C[:2, :2] = cartan_matrix("A", 2)
        C[2:, 2:] = cartan_matrix("A", 1)
        assert cartan_type(C) == "A1xA2" or cartan_type(C) == "A2xA1"

    def test_rank_two_labels_from_presets(self):
        assert named("Sp", 4).cartan_type == "C2"
        assert named("Spin", 5).cartan_type == "B2"


class TestNamed:
    def test_sl2(self):
        rd = named("SL", 2)
        assert rd.rank == 1 and rd.cartan_type == "A1"
        assert (rd.rho_star == identity(1)).all()

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_pgl_is_root_lattice(self, n):
        rd = named("PGL", n)
        assert (rd.rho_star == cartan_matrix("A", n - 1)).all()

    def test_norm_one_torus_klein(self):
        rd = named("norm_one_torus", group=K4)
        assert rd.rank == 3 and rd.semisimple_rank == 0
        assert not rd.X.is_trivial_action()

    def test_unsupported_family(self):
        with pytest.raises(RootDatumError) as err:
            named("E", 8)
        for fam in FAMILIES:
            assert fam in str(err.value)

    @pytest.mark.parametrize(
        "family, n, G, twist",
        [
            ("SL", 1, C1, None),
            ("Sp", 5, C1, None),
            ("SL", 2, C2, "flip"),
            ("SO", 8, C3, "triality"),
            ("SL", 3, K4, "flip"),
            ("SL", 3, C2, "spin"),
            ("GL", 2, C2, "triality"),
        ],
    )
    def test_rejected_combinations(self, family, n, G, twist):
        with pytest.raises(RootDatumError):
            named(family, n, G, twist)

    def test_explicit_diagram_permutations(self):
        rd = named("SL", 3, K4, twist=[(0, 1), (1, 0), (0, 1), (1, 0)])
        assert rd.group.order == 4
        with pytest.raises(RootDatumError):
            named("SL", 3, C3, twist=[(0, 1), (1, 0), (1, 0)])

    @pytest.mark.parametrize("family, n, G, twist", SEMISIMPLE, ids=lambda v: ident(v))
    def test_equivariance(self, family, n, G, twist):
        rd = named(family, n, G, twist)
        for g in range(G.order):
            assert (rd.rho_star.dot(rd.X.action[g]) == rd.weight_action[g].dot(rd.rho_star)).all()


class TestPi1:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_sl_and_pgl(self, n):
        assert pi1(named("SL", n)).invariants == Z()
        assert pi1(named("PGL", n)).invariants == Z(0, (n,))

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_torus(self, r):
        assert pi1(named("torus", r)).invariants == Z(r)

    @pytest.mark.parametrize("family, n, G, twist", SEMISIMPLE, ids=lambda v: ident(v))
    def test_order_matches_picard_of_closure(self, family, n, G, twist):
        rd = named(family, n, G, twist)
        pic_bar = cokernel_invariants(rd.rho_star, rows=rd.semisimple_rank)
        assert pic_bar.free_rank == 0
        assert pic_bar == pi1(rd).invariants

    @pytest.mark.parametrize("family, n, G, twist", SIMPLY_CONNECTED, ids=lambda v: ident(v))
    def test_simply_connected_vanishing(self, family, n, G, twist):
        rd = named(family, n, G, twist)
        assert pi1(rd).invariants == Z()
        assert cohomology(pi1_dual_complex(rd)) == [Z(), Z()]

    def test_dual_complexes(self):
        D = pi1_dual_complex(named("SL", 2))
        assert (D.differential(0) == identity(1)).all()
        D = pi1_dual_complex(named("PGL", 2))
        assert D.differential(0)[0, 0] == 2
        assert cohomology(D) == [Z(), Z(0, (2,))]
        T = named("torus", 3)
        assert pi1_dual_complex(T) == concentrated(T.X)


class TestFunctoriality:
    def test_sl2_to_pgl2(self):
        f = dual_complex_map(named("SL", 2), named("PGL", 2), [[1]])
        m = induced_complex_cohomology_map(f, 1)
        assert m.source.invariants == Z() and m.target.invariants == Z(0, (2,))

    def test_pgl2_to_sl2(self):
        f = dual_complex_map(named("PGL", 2), named("SL", 2), [[2]])
        m = induced_complex_cohomology_map(f, 1)
        assert m.source.invariants == Z(0, (2,)) and m.target.invariants == Z()

    def test_identity(self):
        rd = named("SO", 8, C2, "flip")
        f = dual_complex_map(rd, rd, identity(rd.rank))
        g = identity_map(pi1_dual_complex(rd))
        assert all((f.component(i) == g.component(i)).all() for i in (0, 1))

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_gl_to_pgl(self, n):
        gl, pgl = named("GL", n), named("PGL", n)
        f = dual_complex_map(gl, pgl, gl.rho_star)
        h0 = induced_complex_cohomology_map(f, 0)
        h1 = induced_complex_cohomology_map(f, 1)
        assert h0.source.invariants == Z(1) and h0.target.invariants == Z()
        assert h1.source.invariants == Z() and h1.target.invariants == Z(0, (n,))
        back = dual_complex_map(pgl, gl, gl.roots)
        assert induced_complex_cohomology_map(back, 0).target.invariants == Z(1)

    def test_composition(self):
        sl, pgl = named("SL", 2), named("PGL", 2)
        f = dual_complex_map(sl, pgl, [[1]])
        g = dual_complex_map(pgl, sl, [[2]])
        h = dual_complex_map(sl, sl, [[2]])
        gf = compose(f, g)
        assert all((gf.component(i) == h.component(i)).all() for i in (0, 1))

    def test_incompatible(self):
        with pytest.raises(RootDatumError):
            dual_complex_map(named("SL", 2), named("PGL", 2), [[1]], weight_map=[[1]])
        with pytest.raises(RootDatumError):
            dual_complex_map(named("torus", 1), named("PGL", 2), [[1]])
        sl3 = named("SL", 3, C2, "flip")
        with pytest.raises(RootDatumError):
            dual_complex_map(sl3, sl3, as_matrix([[1, 0], [0, 2]]))


class TestReport:
    def test_split_pgl2(self):
        rep = invariant_report(named("PGL", 2))
        assert rep.U_rank == 0
        assert rep.Pic_bar == Z(0, (2,)) and rep.Pic == Z(0, (2,))
        assert rep.Br_a == Z() and rep.Sha2_omega == Z()

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_split_gl(self, n):
        rep = invariant_report(named("GL", n))
        assert rep.U_rank == 1
        assert rep.Pic_bar == rep.Pic == rep.Br_a == Z()

    @pytest.mark.parametrize("n", range(2, 7))
    def test_cyclic_norm_one_torus(self, n):
        rep = invariant_report(named("norm_one_torus", group=make_cyclic(n)))
        assert rep.Pic == Z(0, (n,))
        assert rep.Sha1_omega == rep.Sha2_omega == Z()

    def test_biquadratic(self):
        rep = invariant_report(named("norm_one_torus", group=K4))
        assert rep.Pic == Z(0, (2, 2))
        assert rep.Sha2_omega == Z(0, (2,))

    def test_quasi_trivial_torus(self):
        rep = invariant_report(named("quasi_trivial_torus", group=S3, subgroup=Subgroup(S3, (0, 1))))
        assert rep.Pic == Z() and rep.Sha2_omega == Z()

    def test_json_round_trip(self):
        rep = invariant_report(named("PSO", 8, C3, "triality"))
        assert InvariantReport.from_json(rep.to_json()) == rep

    def test_degree_bound_reports_missing(self):
        rd = named("norm_one_torus", group=C2)
        rep = invariant_report(rd, CohomologyConfig(max_degree=1))
        assert rep.Pic is not None and rep.Br_a is None and rep.Sha2_omega is None

    def test_without_sha(self):
        rep = invariant_report(named("PGL", 3), sha=False)
        assert rep.Sha1_omega is None and rep.Sha2_omega is None

    def test_matches_direct_hypercohomology(self):
        rd = named("GL", 3, C2, "flip")
        rep = invariant_report(rd)
        assert rep.Pic == hypercohomology(C2, pi1_dual_complex(rd), 1).invariants == Z(0, (2,))
