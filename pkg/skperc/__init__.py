# -*- coding: utf-8 -*-
__license__ = "GPLv3"
__version__ = "1.0.0"

from .bounds import (
    BoundConstants,
    BOUND_COLUMNS,
    K_CAP,
    LemmaCheck,
    MAIN_BASE,
    MAIN_PREFACTOR,
    N0,
    N1,
    N2,
    N3,
    N4,
    N_main,
    VARIANTS,
    applicable_formulas,
    bound_table,
    c1,
    c1_prime,
    c2,
    c3,
    check_binomial,
    check_exponential,
    check_fourth_power,
    check_large_parameter,
    check_monotonicity,
    check_small_parameter_cap,
    connection_lemma_check,
    constants,
    insulation_ratio,
    intermediate_params,
    n_k,
    nu_p_distribution,
    path_lemma_bound,
    path_lemma_check,
    piece_grid,
    s_k,
    split_points,
    verify_appendix,
    verify_survival_bound,
    verify_uniform_split,
)
from .io import (
    MANIFEST_SUFFIX,
    CheckResult,
    RunManifest,
    VerificationReport,
    dumps_csv,
    dumps_json,
    manifest_path,
    to_jsonable,
    write_csv,
    write_json,
)
from .linalg import solve_exact, stationary_distribution
from .monotonicity import (
    DEFAULT_N_MAX,
    DIRECT_STEPS,
    EXACT_MAX_STEPS,
    MONOTONE_RTOL,
    STATIONARY_INITIAL,
    ImplicationReport,
    MarginalCurve,
    check_monotone_at,
    connection_probability,
    empirical_onset,
    exact_propagate,
    expected_infected,
    implication_sweep,
    initial_distribution,
    layer_law,
    marginal,
    marginal_curve,
    propagate,
    start_vector,
    verify_implication_chain,
)
from .montecarlo import (
    BLOCK_SIZE,
    DEFAULT_DEPTH,
    FUNCTIONALS,
    Estimate,
    SimConfig,
    estimate,
    sample_chain_path,
    sample_patterns,
)
from .patterns import (
    MAX_CYCLE_LENGTH,
    STAR,
    LayerConfig,
    LayerGraph,
    Pattern,
    PatternChain,
    PatternSpace,
    TransitionKernel,
    attainable_states,
    bell_number,
    build_kernel,
    canonical_rows,
    canonicalize,
    connectivity_kernel,
    cylinder_chain,
    enumerate_patterns,
    evaluate,
    initial_support,
    is_noncrossing,
    layer_weights,
    pattern_chain,
    reachable_states,
    restricted_growth_strings,
    rotate,
    successor,
    sweep_layer,
)
from .qsd import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    AbsorbingChain,
    ConvergenceReport,
    MinorizationParams,
    QsdResult,
    SurvivalComparison,
    compute_qsd,
    conditioned_distribution,
    conditioned_kernel,
    dense_qsd,
    extinction_constant,
    iconditioned,
    minorization_constant,
    onset_bound,
    qsd_floor,
    qsd_floor_check,
    survival_comparison_constant,
    total_variation,
    verify_convergence_bound,
)
from .saw import (
    DEFAULT_CENSUS_BUDGET,
    GROWTH_RATE,
    NEIGHBOURS,
    ORACLE_MAX_EDGES,
    ORACLE_MAX_LENGTH,
    PREFIX_DEPTH,
    SeriesBound,
    WalkCensus,
    a_prime,
    a_prime_split,
    c2_consistency,
    c2_series,
    census,
    enclosed_squares,
    first_passage_counts,
    iter_walks,
    minimal_path_probability,
    minimal_path_walks,
    p_prime,
    p_prime_oracle,
    return_counts,
    size,
    small_counts,
    tail_coefficient,
    theorem3,
    verify_recursions,
    w0_bound,
    w0_terms,
)
from .unionfind import UnionFind
from .utils import (
    CPU_COUNT,
    CapacityError,
    CensusTruncatedWarning,
    ConvergenceError,
    DivergentSeriesError,
    ExtinctionError,
    InconclusiveComparisonWarning,
    InvalidPartitionError,
    MinimalPathTieWarning,
    OracleBudgetError,
    ProbabilityRangeError,
    StructuralError,
    UnboundedOnsetError,
    as_fraction,
    check_probability,
    suppress_warnings,
)
