"""Fixed-point proportions of permutation cosets and periodic points of
x^d + c on the projective line over residue fields of cyclotomic base fields.
"""

from .perms import (
    DEGREE_CAP,
    PermSet,
    Permutation,
    ResourceCapError,
    close_under_composition,
    coset,
    cyclic_group,
    fpp,
    from_cycles,
    group_from,
    identity,
    is_transitive,
    mean_trace,
    permset,
    symmetric_group,
    trace,
)
from .indicatrix import (
    DIVERGES,
    IndicatrixPoly,
    IntervalRational,
    PrecisionExhaustedError,
    compose,
    derivative_at_one,
    epsilon_index,
    indicatrix_of,
    iterate_at_zero,
    value_at,
)
from .wreath import WreathElement, coset_wreath, iterated_wreath, wreath_order
from .powermap import (
    AffineElement,
    CosetStatus,
    CycSetting,
    GaloisData,
    Preperiodicity,
    RegimeReport,
    build_B1,
    classify_regime,
    coset_status,
    galois_A,
    is_zero_preperiodic,
    parse_setting,
    zero_orbit_report,
)
from .residue_fields import (
    PrimeOfK,
    RamifiedPrimeError,
    ResidueField,
    make_field,
    prime_stream,
    primes_above,
    reduce_cyclotomic,
)
from .dynamics import (
    FunctionalGraph,
    ProjPoint,
    ReducedMap,
    build_graph,
    general_map,
    image_size_at,
    image_size_sequence,
    is_bijective,
    periodic_by_cycles,
    periodic_by_image_iteration,
    periodic_count,
    power_map,
    reduce_map,
)
from .bounds import (
    BoundInputs,
    error_term,
    fix_class_count,
    genus_bound,
    min_norm_for_delta,
    murty_deviation,
    proportion_bound,
    ramified_bound,
)

__version__ = "0.1.0"
