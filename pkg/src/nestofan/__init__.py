"""Toric fans of nested sets, symmetric products of building sets, and
weighted compactifications of point configurations in projective space.

All arithmetic is exact: lattice vectors are integer tuples and weights are
``fractions.Fraction``.
"""

from .geometry import (
    Fan,
    FanError,
    all_cones,
    canonical,
    cone_lookup,
    f_vector,
    fan_equal,
    fan_power,
    is_complete,
    is_primitive,
    is_unimodular,
    join,
    point_fan,
    primitive,
    product,
    refines,
    relabel,
    simplex_fan,
    star,
    star_subdivision,
    validate_fan,
)
from .moduli import (
    LemmaCheck,
    WeightVector,
    as_plain,
    b_A,
    blowup_centers,
    blowup_fan,
    chamber_signature,
    check_lemma_join,
    g_A,
    hassett_weight_A_prime,
    is_toric_chamber,
    lm_fan,
    lm_weights,
    product_fan_symmetries,
    random_toric_weight,
    unmatched_singletons,
    validate_weight,
    verify_lemma_join,
    verify_thm1,
    verify_thm2,
    verify_thm3_part1,
    verify_thm3_part2,
    weight_floor,
)
from .nesto import (
    OVER_POLYTOPE,
    PLAIN,
    BuildingSet,
    complete_building_set,
    connected_building_sets,
    diagonal_compatibility_check,
    minkowski_nestohedron_oracle,
    nested_fan,
    order_independence_check,
    random_connected_building_set,
    schedule_count,
    subdivision_schedule,
    sym_building_set,
    sym_fan,
    validate_building_set,
    valid_schedules,
)

__version__ = "0.1.0"
