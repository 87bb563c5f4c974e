# -*- coding: utf-8 -*-
""" Quasi-stationary distributions and convergence certificates """

from .certificate import (
    ConvergenceReport,
    MinorizationParams,
    SurvivalComparison,
    conditioned_kernel,
    extinction_constant,
    minorization_constant,
    onset_bound,
    qsd_floor,
    qsd_floor_check,
    survival_comparison_constant,
    verify_convergence_bound,
)
from .chain import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    AbsorbingChain,
    QsdResult,
    compute_qsd,
    conditioned_distribution,
    dense_qsd,
    iconditioned,
    total_variation,
)
