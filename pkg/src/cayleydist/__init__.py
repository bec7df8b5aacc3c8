"""Hamming distances and Cayley stability of finite-group operation tables."""

from .errors import CayleyError, InputError, ViolationError
from .group_core import (
    GroupKind,
    GroupTable,
    Permutation,
    are_isomorphic,
    generating_sequence,
    groups_of_order,
    is_dihedral_twice_odd,
    is_prime,
    make_group,
    power,
    transport,
    validate_table,
)
from .metric import (
    BoundReport,
    DistanceProfile,
    analytic_lower_bound,
    check_lemmas,
    delta0,
    dist,
    estim1_bound,
    estim2_bounds,
    hom_distance,
    light_set,
    max_disjoint_subset,
    min_transposition_mf,
    reconstruct_isomorphism,
)
from .search import (
    MCase,
    PatternMod,
    VerificationReport,
    apply_pattern,
    brute_delta,
    complete_from_row,
    distinct_table_counts,
    enumerate_patterns,
    kind_stability,
    prime_stability_verify,
)

__all__ = [
    "BoundReport",
    "CayleyError",
    "DistanceProfile",
    "GroupKind",
    "GroupTable",
    "InputError",
    "MCase",
    "PatternMod",
    "Permutation",
    "VerificationReport",
    "ViolationError",
    "analytic_lower_bound",
    "apply_pattern",
    "are_isomorphic",
    "brute_delta",
    "check_lemmas",
    "complete_from_row",
    "delta0",
    "dist",
    "distinct_table_counts",
    "enumerate_patterns",
    "estim1_bound",
    "estim2_bounds",
    "generating_sequence",
    "groups_of_order",
    "hom_distance",
    "is_dihedral_twice_odd",
    "is_prime",
    "kind_stability",
    "light_set",
    "make_group",
    "max_disjoint_subset",
    "min_transposition_mf",
    "power",
    "prime_stability_verify",
    "reconstruct_isomorphism",
    "transport",
    "validate_table",
]

__version__ = "0.1.0"
