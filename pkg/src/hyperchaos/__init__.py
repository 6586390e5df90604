"""Exact dynamics of PL interval maps, their induced hyperspace maps, and chaos checks."""

from .criteria import (
    ChaosVerdict,
    CheckResult,
    Construction,
    Params,
    Status,
    TransitiveIntervalReport,
    check_covering_transitivity,
    check_diam_growth,
    check_f1,
    check_g1,
    classify_chaos,
    construct_hyper_eps_ly_pair,
    construct_hyper_ly_pair,
    find_invariant_transitive_intervals,
)
from .hyperspace import (
    OpenInterval,
    VietorisBox,
    eps_neighborhood,
    hausdorff_distance,
    hausdorff_orbit_stats,
    induced_image,
    induced_orbit,
    vietoris_member,
)
from .intervals import CompactSet, DomainError, Interval, rational
from .pairs import (
    DensityReport,
    PairKind,
    PairVerdict,
    classify_point_pair,
    classify_set_pair,
    scan_hyper_pairs,
    scan_pairs,
)
from .pl_map import (
    MapFormatError,
    PLMap,
    build_flip,
    build_identity,
    build_snoha_example,
    build_swapped_two_hump,
    build_tent,
    build_twin_tent,
    builtin_map,
    eval_map,
    fixed_points,
    image_interval,
    iterate_interval,
    preimage_in,
    preimage_point,
)
from .shift_space import BinarySeq, SeqSet, build_example_N, hausdorff_seq, seq_distance, shift, verify_example
from .stats import OrbitStats

__version__ = "0.1.0"
