# -*- coding: utf-8 -*-
""" Marginals of the pattern chain and onset of monotonicity """

from .marginals import (
    DIRECT_STEPS,
    EXACT_MAX_STEPS,
    STATIONARY_INITIAL,
    MarginalCurve,
    connection_probability,
    exact_propagate,
    expected_infected,
    initial_distribution,
    layer_law,
    marginal,
    marginal_curve,
    propagate,
    start_vector,
)
from .onset import (
    DEFAULT_N_MAX,
    MONOTONE_RTOL,
    ImplicationReport,
    check_monotone_at,
    empirical_onset,
    implication_sweep,
    verify_implication_chain,
)
