# -*- coding: utf-8 -*-
"""
Layer transition kernel
=======================

Exact one-layer transition counts of the pattern chain. Every bond configuration of a layer is applied to
every source pattern; transitions are tallied by the number of open edges, so that a single enumeration
serves every value of the percolation parameter.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from npstreams import pmap
from scipy.sparse import coo_matrix

from ..unionfind import UnionFind
from ..utils import check_probability, popcount
from .space import STAR, LayerGraph, canonicalize, enumerate_patterns

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LayerConfig:
    """
    Open/closed state of the edges between two consecutive layers and within the upper one.

    Bits ``0, ..., k - 1`` of `open_mask` are the vertical edges ``{(i, 0), (i, 1)}``; the following bits are
    the horizontal edges of the upper layer, in the order of the graph's edge list (for cycles, bit ``k + i``
    is the edge ``{(i, 1), (i + 1 mod k, 1)}``).

    Parameters
    ----------
    open_mask : int
    n_edges : int
        Number of meaningful bits.
    """

    open_mask: int
    n_edges: int

    def __post_init__(self):
        if not 0 <= self.open_mask < 2**self.n_edges:
            raise ValueError(f"Mask {self.open_mask} does not fit in {self.n_edges} edges")

    @classmethod
    def from_edges(cls, graph, vertical=tuple(), horizontal=tuple()):
        """
        Layer configuration from explicit open edges.

        Parameters
        ----------
        graph : LayerGraph
        vertical : iterable of ints
            Vertices whose vertical edge is open.
        horizontal : iterable of 2-tuples
            Open horizontal edges, as unordered vertex pairs.

        Returns
        -------
        config : LayerConfig
        """
        k = graph.n_vertices
        positions = {frozenset(edge): k + i for i, edge in enumerate(graph.edges)}
        mask = 0
        for v in vertical:
            mask |= 1 << v
        for edge in horizontal:
            try:
                mask |= 1 << positions[frozenset(edge)]
            except KeyError:
                raise ValueError(f"{tuple(edge)} is not a horizontal edge of the graph") from None
        return cls(open_mask=mask, n_edges=graph.n_edges)

    @property
    def n_open(self):
        return bin(self.open_mask).count("1")

    def is_open(self, bit):
        return bool(self.open_mask >> bit & 1)


def successor(y, config, graph=None):
    """
    Pattern of the upper layer after one layer of bonds.

    Parameters
    ----------
    y : Pattern
        Pattern of the lower layer.
    config : LayerConfig
        Bonds between the two layers and within the upper one.
    graph : LayerGraph or None, optional
        Base graph. Defaults to the cycle on ``y.k`` vertices.

    Returns
    -------
    x : Pattern
        Partition of the upper layer induced by the lower blocks and the open bonds, where the marker joins
        every upper vertex connected to the lower block of the marker.
    """
    k = y.k
    if graph is None:
        graph = LayerGraph.cycle(k)
    if config.n_edges != graph.n_edges:
        raise ValueError(f"Configuration has {config.n_edges} edges, but the layer has {graph.n_edges}")

    uf = UnionFind([("top", v) for v in range(k)])
    for block in y.blocks():
        uf.union(*[e if e == STAR else ("bottom", e) for e in block])
    for v in range(k):
        if config.is_open(v):
            uf.union(("bottom", v), ("top", v))
    for i, (u, v) in enumerate(graph.edges):
        if config.is_open(k + i):
            uf.union(("top", u), ("top", v))

    blocks = dict()
    for v in range(k):
        blocks.setdefault(uf[("top", v)], list()).append(v)
    star_root = uf[STAR]
    if star_root in blocks:
        blocks[star_root].append(STAR)
    else:
        blocks[star_root] = [STAR]
    return canonicalize(blocks.values(), k=k)


def sweep_layer(bottom, masks, graph):
    """
    Vectorized successor of many (pattern, configuration) pairs.

    Connected components are found by propagating minimal labels along open edges until stable.

    Parameters
    ----------
    bottom : `~numpy.ndarray`, shape (N, k + 1)
        Canonical assignments of the lower patterns.
    masks : `~numpy.ndarray`, shape (N,)
        Open-edge masks of the layer configurations.
    graph : LayerGraph

    Returns
    -------
    top : `~numpy.ndarray`, shape (N, k + 1)
        Canonical assignments of the upper patterns.
    """
    k = graph.n_vertices
    bottom = np.asarray(bottom, dtype=np.int64)
    masks = np.asarray(masks, dtype=np.int64)
    n = masks.shape[0]
    bottom = np.broadcast_to(bottom, (n, k + 1))
    bits = ((masks[:, None] >> np.arange(graph.n_edges, dtype=np.int64)) & 1).astype(bool)

    # Nodes 0..k-1 are lower vertices, k..2k-1 upper vertices, 2k the marker.
    star = 2 * k
    labels = np.empty((n, 2 * k + 1), dtype=np.int64)
    labels[:, :k] = bottom[:, :k]
    labels[:, star] = bottom[:, k]
    labels[:, k : 2 * k] = k + 1 + np.arange(k)

    lower = list(range(k)) + [star]
    links = [(lower[a], lower[b], bottom[:, a] == bottom[:, b]) for a in range(k + 1) for b in range(a + 1, k + 1)]
    links += [(v, k + v, bits[:, v]) for v in range(k)]
    links += [(k + u, k + v, bits[:, k + i]) for i, (u, v) in enumerate(graph.edges)]
    links = [(u, v, active) for u, v, active in links if active.any()]

    changed = True
    while changed:
        changed = False
        for u, v, active in links:
            lu, lv = labels[:, u], labels[:, v]
            update = active & (lu != lv)
            if update.any():
                low = np.minimum(lu, lv)[update]
                labels[update, u] = low
                labels[update, v] = low
                changed = True

    return canonical_rows(np.concatenate([labels[:, k : 2 * k], labels[:, star : star + 1]], axis=1))


def canonical_rows(values):
    """
    Restricted-growth relabelling of each row of an array of labels.

    Parameters
    ----------
    values : `~numpy.ndarray`, shape (N, M)

    Returns
    -------
    rgs : `~numpy.ndarray`, shape (N, M)

    Examples
    --------
    >>> canonical_rows(np.array([[7, 3, 7, 5]]))
    array([[0, 1, 0, 2]])
    """
    values = np.asarray(values)
    n, m = values.shape
    rows = np.arange(n)
    out = np.zeros((n, m), dtype=np.int64)
    counter = np.ones(n, dtype=np.int64)
    for j in range(1, m):
        equal = values[:, :j] == values[:, j : j + 1]
        seen = equal.any(axis=1)
        out[:, j] = np.where(seen, out[rows, equal.argmax(axis=1)], counter)
        counter += ~seen
    return out


class TransitionKernel:
    """
    Exact integer transition counts of the pattern chain.

    For a source ``y`` and a target ``x``, ``counts[:, j]`` holds the number of layer configurations with ``j``
    open edges that map ``y`` to ``x``, so that
    ``pi_p(y, x) = sum_j counts[j] * p**j * (1 - p)**(n_edges - j)``.

    Use :func:`build_kernel` or :func:`connectivity_kernel` to build instances.

    Attributes
    ----------
    space : PatternSpace
    states : `~numpy.ndarray`
        Pattern indices of the states, in kernel order.
    n_edges : int
    sources, targets : `~numpy.ndarray`
        Kernel-order indices of every nonzero transition, sorted by source then target.
    counts : `~numpy.ndarray`, shape (nnz, n_edges + 1)
    """

    def __init__(self, space, states, sources, targets, counts):
        self.space = space
        self.states = np.asarray(states, dtype=np.int64)
        self.n_edges = space.graph.n_edges
        self.sources = np.asarray(sources, dtype=np.int64)
        self.targets = np.asarray(targets, dtype=np.int64)
        self.counts = np.asarray(counts, dtype=np.int64)
        self._row_starts = np.searchsorted(self.sources, np.arange(len(self.states) + 1))

    def __len__(self):
        return len(self.states)

    @property
    def k(self):
        return self.space.k

    @property
    def patterns(self):
        """Patterns of the states, in kernel order."""
        return [self.space[i] for i in self.states]

    def successors(self, i):
        """Kernel-order indices reachable from state ``i`` in one step with positive probability."""
        return self.targets[self._row_starts[i] : self._row_starts[i + 1]]

    def local_indices(self, pattern_indices):
        """Kernel-order positions of pattern indices."""
        lookup = {int(s): i for i, s in enumerate(self.states)}
        return np.array([lookup[int(i)] for i in pattern_indices], dtype=np.int64)

    def rows(self):
        """
        Iterate over the nonzero counts in deterministic order.

        Yields
        ------
        y, x, j, count : ints
            Pattern indices of source and target, open-edge number and count, ascending in (y, x, j).
        """
        for s, t, row in zip(self.sources, self.targets, self.counts):
            for j in np.flatnonzero(row):
                yield int(self.states[s]), int(self.states[t]), int(j), int(row[j])


def _kernel_rows(sources, space, states):
    """Transition counts out of a chunk of source patterns."""
    graph = space.graph
    m = graph.n_edges
    masks = np.arange(2**m, dtype=np.int64)
    n_open = popcount(masks, m)
    local = np.full(len(space), -1, dtype=np.int64)
    local[states] = np.arange(len(states))

    all_sources, all_targets, all_counts = list(), list(), list()
    for s in sources:
        top = sweep_layer(space.assignments[states[s]], masks, graph)
        targets = local[space.lookup(top)]
        if np.any(targets < 0):
            raise ValueError(f"Successors of {space[states[s]]} leave the requested set of states")
        counts = np.bincount(targets * (m + 1) + n_open, minlength=len(states) * (m + 1)).reshape(len(states), m + 1)
        nonzero = np.flatnonzero(counts.any(axis=1))
        all_sources.append(np.full(nonzero.shape, s, dtype=np.int64))
        all_targets.append(nonzero)
        all_counts.append(counts[nonzero])
    return np.concatenate(all_sources), np.concatenate(all_targets), np.concatenate(all_counts)


def build_kernel(space, states=None, processes=1):
    """
    Exact transition counts by enumeration of every layer configuration.

    Parameters
    ----------
    space : PatternSpace
    states : array_like of ints or None, optional
        Pattern indices to use as states. Must be closed under transitions. Defaults to every pattern.
    processes : int, optional
        Number of worker processes. Source patterns are split in contiguous chunks, so the result does not
        depend on the number of processes.

    Returns
    -------
    kernel : TransitionKernel

    Raises
    ------
    ValueError : if `states` is not closed under transitions.
    """
    states = np.arange(len(space)) if states is None else np.sort(np.asarray(states, dtype=np.int64))
    log.debug(f"Building layer kernel over {len(states)} states and {2 ** space.graph.n_edges} configurations")

    chunks = [c for c in np.array_split(np.arange(len(states)), max(1, processes) * 4) if len(c)]
    parts = list(pmap(_kernel_rows, chunks, kwargs=dict(space=space, states=states), processes=processes, ntotal=len(chunks)))
    sources, targets, counts = (np.concatenate(arrays) for arrays in zip(*parts))
    return TransitionKernel(space, states, sources, targets, counts)


def connectivity_kernel(k, graph=None, processes=1):
    """
    Transition counts of the connectivity partitions of a layer, without infection.

    The states are the uninfected patterns, whose marker is a block of its own; their vertex partitions are
    all the partitions of the layer.

    Parameters
    ----------
    k : int
        Number of vertices.
    graph : LayerGraph or None, optional
        Base graph. Defaults to the cycle C_k.
    processes : int, optional
        Number of worker processes.

    Returns
    -------
    kernel : TransitionKernel
    """
    space = enumerate_patterns(k, graph=graph)
    return build_kernel(space, states=space.dagger, processes=processes)


def layer_weights(p, n_edges):
    """
    Probability of one specific configuration with ``j`` open edges, for every ``j``.

    Parameters
    ----------
    p : float or Fraction
        Percolation parameter. Fractions give exact weights.
    n_edges : int

    Returns
    -------
    weights : `~numpy.ndarray`, shape (n_edges + 1,)
        Float array, or object array of Fractions in exact mode.
    """
    if isinstance(p, Fraction):
        return np.array([p**j * (1 - p) ** (n_edges - j) for j in range(n_edges + 1)], dtype=object)
    j = np.arange(n_edges + 1)
    return np.power(float(p), j) * np.power(1.0 - float(p), n_edges - j)


def evaluate(kernel, p, subset=None):
    """
    Transition matrix of the pattern chain at a given percolation parameter.

    Parameters
    ----------
    kernel : TransitionKernel
    p : float or Fraction
        Percolation parameter in [0, 1]. A Fraction selects the exact-rational mode.
    subset : array_like of ints or None, optional
        Pattern indices to restrict rows and columns to, e.g. the attainable infected patterns. The
        restriction is substochastic.

    Returns
    -------
    matrix : `~scipy.sparse.csr_matrix` or `~numpy.ndarray`
        Row-stochastic matrix over the kernel states (or the restriction to `subset`). Sparse with only the
        positive transitions stored for floating-point `p`; a dense array of Fractions in exact mode.

    Raises
    ------
    ProbabilityRangeError : if `p` is not in [0, 1].
    """
    check_probability(p)
    weights = layer_weights(p, kernel.n_edges)
    positions = None if subset is None else kernel.local_indices(subset)

    if weights.dtype == object:
        values = np.array([sum(int(c) * w for c, w in zip(row, weights) if c) for row in kernel.counts], dtype=object)
        matrix = np.full((len(kernel), len(kernel)), Fraction(0), dtype=object)
        matrix[kernel.sources, kernel.targets] = values
        return matrix if positions is None else matrix[np.ix_(positions, positions)]

    shape = (len(kernel), len(kernel))
    matrix = coo_matrix((kernel.counts @ weights, (kernel.sources, kernel.targets)), shape=shape).tocsr()
    if positions is not None:
        matrix = matrix[positions][:, positions]
    matrix.eliminate_zeros()
    matrix.sort_indices()
    return matrix
