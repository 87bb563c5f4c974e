# -*- coding: utf-8 -*-
""" Infection patterns, layer kernels and pattern chains """

from .chain import PatternChain, cylinder_chain, pattern_chain
from .kernel import (
    LayerConfig,
    TransitionKernel,
    build_kernel,
    canonical_rows,
    connectivity_kernel,
    evaluate,
    layer_weights,
    successor,
    sweep_layer,
)
from .space import (
    MAX_CYCLE_LENGTH,
    STAR,
    LayerGraph,
    Pattern,
    PatternSpace,
    attainable_states,
    bell_number,
    canonicalize,
    enumerate_patterns,
    initial_support,
    is_noncrossing,
    reachable_states,
    restricted_growth_strings,
    rotate,
)
