"""Exact homology of finite discrete groupoids.

Moore chain complexes over Z and Z/q, Smith-normal-form based homology with
cycle representatives, universal-coefficient verification, Mayer-Vietoris
long exact sequences for saturated covers, and closed-form tables for
shift-of-finite-type families.  Pure Python, integer-exact throughout.
"""

from .abelian import (
    FinAbGroup,
    GroupHom,
    PresentedGroup,
    direct_sum,
    group_of,
    middle_homology,
    tensor,
    tor1,
)
from .chains import (
    FreeChainComplex,
    HomologyResult,
    homology_group,
    homology_int,
    homology_mod,
    shift_sum,
)
from .groupoids import (
    DEFAULT_BUDGET,
    FiniteGroupoid,
    NerveLevel,
    action,
    disjoint_union,
    face,
    is_saturated,
    moore_complex,
    nerve,
    one_object_cyclic,
    orbits,
    pair,
    pushforward_matrix,
    reduction,
    saturation_witness,
    units,
    validate_groupoid,
)
from .matrix import (
    IntegerMatrix,
    SmithDecomposition,
    column_lattice_basis,
    in_column_lattice,
    invariant_factors,
    kernel_basis,
    rank,
    same_column_lattice,
    smith_normal_form,
    solve_columns,
)
from .mv import (
    ConnectingResult,
    LongExactSequence,
    MvChainSes,
    MvDecomposition,
    chain_ses,
    connecting,
    decompose,
    long_exact_sequence,
)
from .sft import (
    FamilySpec,
    GcdRow,
    GcdTable,
    classify,
    collision_search,
    family_h1_oracle,
    family_integral,
    family_mod,
    full_shift_homology,
    full_shift_matrix,
    point_homology,
    probe_schedule,
    sft_matrix_homology,
)
from .uct import (
    CantorReport,
    CylinderRange,
    ModReductionReport,
    UctReport,
    cantor_obstruction,
    decompose_step_function,
    homology_with_coefficients,
    mod_reduction_check,
    uct_assemble,
    uct_verify,
)

__version__ = "0.1.0"

__all__ = [
    "CantorReport",
    "ConnectingResult",
    "CylinderRange",
    "DEFAULT_BUDGET",
    "FamilySpec",
    "FinAbGroup",
    "FiniteGroupoid",
    "FreeChainComplex",
    "GcdRow",
    "GcdTable",
    "GroupHom",
    "HomologyResult",
    "IntegerMatrix",
    "LongExactSequence",
    "ModReductionReport",
    "MvChainSes",
    "MvDecomposition",
    "NerveLevel",
    "PresentedGroup",
    "SmithDecomposition",
    "UctReport",
    "action",
    "cantor_obstruction",
    "chain_ses",
    "classify",
    "collision_search",
    "column_lattice_basis",
    "connecting",
    "decompose",
    "decompose_step_function",
    "direct_sum",
    "disjoint_union",
    "face",
    "family_h1_oracle",
    "family_integral",
    "family_mod",
    "full_shift_homology",
    "full_shift_matrix",
    "group_of",
    "homology_group",
    "homology_int",
    "homology_mod",
    "homology_with_coefficients",
    "in_column_lattice",
    "invariant_factors",
    "is_saturated",
    "kernel_basis",
    "long_exact_sequence",
    "middle_homology",
    "mod_reduction_check",
    "moore_complex",
    "nerve",
    "one_object_cyclic",
    "orbits",
    "pair",
    "point_homology",
    "probe_schedule",
    "pushforward_matrix",
    "rank",
    "reduction",
    "same_column_lattice",
    "saturation_witness",
    "sft_matrix_homology",
    "shift_sum",
    "smith_normal_form",
    "solve_columns",
    "tensor",
    "tor1",
    "uct_assemble",
    "uct_verify",
    "units",
    "validate_groupoid",
]
