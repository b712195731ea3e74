"""Decomposable multisort species: composition operators, indecomposables,
component filtrations and exact exponential-formula verification."""

from .checks import (
    CheckReport,
    check_base_point,
    check_composition_operator,
    check_d1,
    check_functoriality,
    check_injective,
    check_naturality,
    check_partition_properties,
    check_permutability,
    check_pointwise,
    check_weight,
    verify_exponential_formula,
    verify_refined_formula,
)
from .egf import Egf, closed_form, egf_exp, egf_log, egf_partial, egf_pow_y
from .objects import (
    BasePoint,
    LabeledSet,
    OrderedBipartition,
    SortedBijection,
    bipartitions,
    standard_object,
)
from .poly import Poly, format_poly, parse_poly, poly_add, poly_eval_at_one, poly_mul
from .species import (
    BudgetExceeded,
    SpeciesBundle,
    component_count,
    filtration,
    filtration_egf,
    indecomposables,
    indecomposables_egf,
    species_egf,
)

__version__ = "0.1.0"
