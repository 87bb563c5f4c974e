# -*- coding: utf-8 -*-
""" Closed-form onset bounds and the analytic inequalities behind them """

from .appendix import (
    check_binomial,
    check_exponential,
    check_fourth_power,
    check_large_parameter,
    check_monotonicity,
    check_small_parameter_cap,
    verify_appendix,
)
from .constants import BoundConstants, c1, c1_prime, c2, c3, constants, insulation_ratio, n_k, s_k
from .formulas import K_CAP, MAIN_BASE, MAIN_PREFACTOR, N0, N1, N2, N3, N4, N_main, applicable_formulas
from .lemmas import LemmaCheck, connection_lemma_check, path_lemma_bound, path_lemma_check, verify_survival_bound
from .params import VARIANTS, intermediate_params, nu_p_distribution
from .split import BOUND_COLUMNS, bound_table, piece_grid, split_points, verify_uniform_split
