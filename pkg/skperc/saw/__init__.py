# -*- coding: utf-8 -*-
""" Self-avoiding walk census and the series bounds built on it """

from .census import DEFAULT_CENSUS_BUDGET, NEIGHBOURS, PREFIX_DEPTH, WalkCensus, census, iter_walks
from .minimal_paths import (
    ORACLE_MAX_EDGES,
    ORACLE_MAX_LENGTH,
    enclosed_squares,
    minimal_path_probability,
    minimal_path_walks,
    p_prime,
    p_prime_oracle,
    size,
)
from .recursions import GROWTH_RATE, a_prime, a_prime_split, tail_coefficient, verify_recursions
from .series import SeriesBound, c2_consistency, c2_series, theorem3, w0_bound, w0_terms
from .small import first_passage_counts, return_counts, small_counts
