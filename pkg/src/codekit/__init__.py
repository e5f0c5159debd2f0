"""Trace-norm codes over finite fields: construction, exact weight distributions and verification."""

from .bounds import BoundReport, bound_report, cm_locality_bound, griesmer_k_upper, griesmer_min_length, sphere_packing_distance_optimal
from .charsum import (
    CyclotomicInt,
    ExpSumDistribution,
    char_orthogonality_check,
    cyclotomic_reduce,
    delta_brute,
    delta_closed_distribution,
    gauss_sum_closed,
    gauss_sum_numeric,
    gauss_sums_numeric,
    omega_brute,
    omega_closed_distribution,
)
from .code import (
    DualLowWeights,
    LinearCode,
    WeightDistribution,
    build_augmented_code,
    defining_set,
    is_self_orthogonal,
    macwilliams_dual,
    pless_low_dual_weights,
    weight_distribution_brute,
    weight_divisor,
)
from .family import FamilyCase, VerificationReport, classify_case, predicted_distribution, predicted_dual_low_weights, verify_family
from .field import FieldTower, build_tower, element_arith, rel_norm, rel_trace, subfield_label
from .locality import RepairRule, locality_search, repair_pair, repair_rules

__version__ = "0.1.0"
