"""Asymmetric TSP via the symmetric ghost-vertex lift and cycle search.

The library builds the 2n-vertex symmetric instance that pairs each city
with a ghost, permutes its columns by the pairing involution to get a
zero-diagonal matrix whose positive blocks mirror the instance and its
transpose, and searches that matrix with a k-best simple-path relaxation
for a minimal positive n-arc cycle cheaper than a greedy upper bound.
Exact oracles (vectorized brute force and Held-Karp) verify every answer at
desk scale, and a seeded experiment harness measures how often the search
actually finds the optimum.
"""

from .bounds import best_upper_bound, nearest_neighbor, worst_upper_bound
from .costs import (
    INF,
    MAX_ABS_COST,
    AsymCostMatrix,
    NormalizedInstance,
    SymmetricInstance,
    SymmetricVariant,
    build_symmetric,
    normalize,
    zero_diagonal,
)
from .cyclesearch import (
    CandidateTable,
    CycleCandidate,
    PathCandidate,
    SearchCounters,
    floyd_warshall_k_best,
    min_n_arc_cycle,
)
from .errors import (
    AtspError,
    InstanceError,
    MalformedError,
    NonIntegerError,
    NotAlternatingError,
    SizeLimitError,
    SoundnessError,
    TsplibError,
    UnsupportedFormatError,
)
from .experiment import (
    ExperimentConfig,
    ExperimentReport,
    InstanceGroup,
    RowResult,
    archive_counterexample,
    emit_report,
    load_counterexample,
    replay_counterexample,
    run_experiment,
)
from .instances import (
    Distribution,
    InstanceSpec,
    gen_instance,
    parse_tsplib,
    planted_tour,
)
from .oracles import (
    BRUTE_FORCE_MAX_N,
    CORRESPONDENCE_MAX_N,
    HELD_KARP_MAX_N,
    PATH_ENUM_MAX_SIZE,
    CorrespondenceReport,
    OracleResult,
    brute_force_atsp,
    enumerate_simple_paths,
    held_karp,
    jv_correspondence_check,
)
from .pipeline import PipelineResult, Verdict, run_pipeline
from .rng import Xoshiro256StarStar, splitmix64
from .tours import (
    LiftedTour,
    PermutedMatrix,
    apply_cycle,
    canonical_tour,
    compose,
    cycle_decomposition,
    ghost_pairing,
    identity_permutation,
    inverse,
    is_permutation,
    lift_tour,
    permuted_matrix,
    project_tour,
    random_tour,
    successor_cost,
    tour_cost,
)

__version__ = "0.1.0"
