# -*- coding: utf-8 -*-
""" Direct simulation of percolation on cylinders """

from .simulation import (
    BLOCK_SIZE,
    DEFAULT_DEPTH,
    FUNCTIONALS,
    Estimate,
    SimConfig,
    estimate,
    sample_chain_path,
    sample_patterns,
)
