"""Exact Picard, Brauer and Sha invariants of reductive groups over a finite Galois level."""

from ._kernel import BACKEND
from .cohomology import (
    BudgetExceeded,
    CohomologyConfig,
    DegreeOutOfRange,
    bar_differential,
    group_cohomology,
    hypercohomology,
    les_check,
    restriction_map,
    sha_omega,
)
from .complexes import (
    ComplexMap,
    LatticeComplex,
    complex_cohomology,
    concentrated,
    cone,
    fibre,
    shift,
    two_term,
)
from .gmodules import (
    EquivariantMap,
    GaloisLattice,
    coinvariants,
    invariants_sublattice,
    permutation_module,
    restrict,
    validate_module,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    cyclic_subgroups,
    make_cyclic,
    make_product,
    validate_group,
)
from .lattice import (
    AbelianGroupInvariants,
    SmithDecomposition,
    cokernel_invariants,
    kernel_basis,
    snf,
    subquotient_invariants,
)
from .rootdata import (
    RootDatum,
    dual_complex_map,
    invariant_report,
    named,
    pi1,
    pi1_dual_complex,
    validate_root_datum,
)

__all__ = [
    "AbelianGroupInvariants",
    "BACKEND",
    "BudgetExceeded",
    "CohomologyConfig",
    "ComplexMap",
    "DegreeOutOfRange",
    "EquivariantMap",
    "FiniteGroup",
    "GaloisLattice",
    "LatticeComplex",
    "RootDatum",
    "SmithDecomposition",
    "Subgroup",
    "bar_differential",
    "coinvariants",
    "cokernel_invariants",
    "complex_cohomology",
    "concentrated",
    "cone",
    "cyclic_subgroups",
    "dual_complex_map",
    "fibre",
    "group_cohomology",
    "hypercohomology",
    "invariant_report",
    "invariants_sublattice",
    "kernel_basis",
    "les_check",
    "make_cyclic",
    "make_product",
    "named",
    "permutation_module",
    "pi1",
    "pi1_dual_complex",
    "restrict",
    "restriction_map",
    "sha_omega",
    "shift",
    "snf",
    "subquotient_invariants",
    "two_term",
    "validate_group",
    "validate_module",
    "validate_root_datum",
]

__version__ = "0.1.0"
