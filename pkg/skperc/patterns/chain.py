# -*- coding: utf-8 -*-
"""
Pattern chain
=============

The pattern chain of a layered graph G x Z: its state space, exact layer kernel, attainable infected
patterns and the law of the layer-0 pattern, bundled for repeated evaluation at many percolation parameters.
"""
import logging
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from ..linalg import fraction_array, stationary_distribution
from ..utils import check_probability
from .kernel import build_kernel, evaluate
from .space import LayerGraph, attainable_states, enumerate_patterns, reachable_states

log = logging.getLogger(__name__)


class PatternChain:
    """
    Pattern chain of a layered graph, with the infection anchored at ``(origin, 0)``.

    Parameters
    ----------
    graph : LayerGraph
        Base graph G.
    origin : int, optional
        Vertex o of the origin ``o' = (o, 0)``.
    processes : int, optional
        Number of worker processes used to build the layer kernel.

    Attributes
    ----------
    space : PatternSpace
    kernel : TransitionKernel
        Kernel over every pattern of `space`.
    attainable : `~numpy.ndarray`
        Pattern indices of the attainable infected patterns, the transient states of the chain.
    recurrent : `~numpy.ndarray`
        Pattern indices of the uninfected patterns reachable from the fully disconnected pattern; the
        support of the stationary connectivity law.
    """

    def __init__(self, graph, origin=0, processes=1):
        if not 0 <= origin < graph.n_vertices:
            raise ValueError(f"Origin {origin} is not a vertex of the layer")
        self.graph = graph
        self.origin = origin
        self.space = enumerate_patterns(graph.n_vertices, graph=graph)
        self.kernel = build_kernel(self.space, processes=processes)
        self.attainable = attainable_states(self.space, self.kernel, origin=origin)
        self.recurrent = reachable_states(self.kernel, [self.space.index_of(self.space.x_dagger)])
        log.debug(f"Pattern chain on {self.k} vertices: {len(self.attainable)} attainable infected patterns")

    @property
    def k(self):
        return self.graph.n_vertices

    def __len__(self):
        return len(self.attainable)

    @cached_property
    def states(self):
        """Attainable infected patterns, in the order of the transient matrix."""
        return [self.space[i] for i in self.attainable]

    def position(self, pattern):
        """
        Row of a pattern in the transient matrix.

        Raises
        ------
        ValueError : if `pattern` is not an attainable infected pattern.
        """
        index = self.space.index_of(pattern)
        position = np.searchsorted(self.attainable, index)
        if position == len(self.attainable) or self.attainable[position] != index:
            raise ValueError(f"{pattern} is not an attainable infected pattern")
        return int(position)

    @cached_property
    def infected_counts(self):
        """Number of infected vertices of each attainable pattern."""
        return np.array([len(x.infected) for x in self.states], dtype=np.int64)

    def transition_matrix(self, p):
        """Sparse stochastic matrix over every pattern. Fractions give exact dense matrices."""
        return evaluate(self.kernel, p)

    def transient_matrix(self, p):
        """Substochastic restriction of the transition matrix to the attainable infected patterns."""
        return evaluate(self.kernel, p, subset=self.attainable)

    def absorbing_chain(self, p):
        """
        Absorbing chain of the attainable infected patterns at percolation parameter `p`.

        Returns
        -------
        chain : AbsorbingChain
        """
        from ..qsd import AbsorbingChain

        return AbsorbingChain(self.transient_matrix(p), labels=[str(x) for x in self.states])

    def stationary(self, p):
        """
        Stationary law of the connectivity partition of a layer, over `recurrent`.

        Exact if `p` is a Fraction.
        """
        check_probability(p)
        return stationary_distribution(evaluate(self.kernel, p, subset=self.recurrent))

    def initial_distribution(self, p):
        """
        Law of the layer-0 pattern over the attainable infected patterns.

        The connectivity partition of layer 0 follows the stationary law and the marker joins the block of
        the origin.

        Parameters
        ----------
        p : float or Fraction
            Percolation parameter.

        Returns
        -------
        law : `~numpy.ndarray`
            Probability of each attainable pattern; exact if `p` is a Fraction.
        """
        rho = self.stationary(p)
        if isinstance(p, Fraction):
            law = fraction_array(np.zeros(len(self), dtype=int))
        else:
            law = np.zeros(len(self), dtype=float)
        for index, mass in zip(self.recurrent, rho):
            law[self.position(self.space[index].with_marker_at(self.origin))] += mass
        return law


@lru_cache(maxsize=16)
def pattern_chain(graph, origin=0, processes=1):
    """Cached :class:`PatternChain` of a base graph."""
    return PatternChain(graph, origin=origin, processes=processes)


def cylinder_chain(k, origin=0, processes=1):
    """
    Cached pattern chain of the cylinder C_k x Z.

    Parameters
    ----------
    k : int
        Circumference, at least 3.
    origin : int, optional
        Vertex carrying the infection at layer 0.
    processes : int, optional
        Number of worker processes used to build the layer kernel on first access.

    Returns
    -------
    chain : PatternChain

    Examples
    --------
    >>> len(cylinder_chain(3))
    10
    """
    return pattern_chain(LayerGraph.cycle(k), origin=origin, processes=processes)
