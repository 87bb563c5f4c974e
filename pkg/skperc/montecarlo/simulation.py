# -*- coding: utf-8 -*-
"""
Monte Carlo simulation
======================

Direct simulation of Bernoulli bond percolation on finite windows of the cylinder C_k x Z. Samples are drawn in
blocks of fixed size, each block with its own random stream spawned from the seed, so that estimates do not
depend on the number of worker processes.
"""
import logging
from dataclasses import asdict, dataclass, field
from math import ceil, sqrt

import numpy as np
from npstreams import isum, last, pmap
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..patterns import LayerGraph, Pattern, canonical_rows, sweep_layer
from ..utils import CapacityError, check_probability

log = logging.getLogger(__name__)

DEFAULT_DEPTH = 200
BLOCK_SIZE = 1000
# Largest number of edge variables drawn at once for window functionals.
WINDOW_BATCH_EDGES = 2_000_000
# Layer configurations of chain functionals are packed into int64 masks.
MAX_MASK_BITS = 62

CHAIN_FUNCTIONALS = ("marginal", "connection", "W")
WINDOW_FUNCTIONALS = ("wtilde0", "wbar")
FUNCTIONALS = CHAIN_FUNCTIONALS + WINDOW_FUNCTIONALS


@dataclass(frozen=True)
class SimConfig:
    """
    Parameters of a simulation.

    Parameters
    ----------
    k : int
        Circumference of the cylinder. Large circumferences emulate a strip of Z x Z.
    p : float
        Percolation parameter.
    depth : int, optional
        Number of layers simulated below layer 0 to emulate the half-infinite cylinder, or above layer 0 for
        the upper half-plane functional.
    horizon : int, optional
        Last layer of sampled chain paths.
    samples : int, optional
        Number of independent samples.
    seed : int, optional
        Seed of the random streams. Determines every output.
    origin : int, optional
        Vertex of the origin.
    strip : bool, optional
        If True, layers are paths ``0 - 1 - ... - (k - 1)`` instead of cycles, emulating a strip of Z x Z. Place
        the origin near the middle of wide strips.
    """

    k: int
    p: float
    depth: int = DEFAULT_DEPTH
    horizon: int = 10
    samples: int = 10_000
    seed: int = 0
    origin: int = 0
    strip: bool = False

    def __post_init__(self):
        check_probability(self.p)
        if self.k < 3 and not self.strip:
            raise ValueError(f"Cylinders require a circumference of at least 3, but got {self.k}")
        if self.samples < 1:
            raise ValueError(f"At least one sample is required, but got {self.samples}")
        if self.depth < 1:
            raise ValueError(f"Depth must be at least 1, but got {self.depth}")
        if self.horizon < 0:
            raise ValueError(f"Horizon must be nonnegative, but got {self.horizon}")
        if not 0 <= self.origin < self.k:
            raise ValueError(f"Origin {self.origin} is not in 0..{self.k - 1}")

    @property
    def graph(self):
        return LayerGraph.line(self.k) if self.strip else LayerGraph.cycle(self.k)

    def to_dict(self):
        return asdict(self)


def _layer_masks(rng, p, n, n_edges):
    """Open-edge masks of `n` independent layer configurations."""
    bits = rng.random((n, n_edges)) < p
    return (bits.astype(np.int64) << np.arange(n_edges, dtype=np.int64)).sum(axis=1)


def sample_patterns(config, rng, n, horizon=None):
    """
    Canonical assignments of the layer patterns of `n` independent samples.

    The layer-0 pattern is obtained by sweeping ``depth + 1`` layers up from isolated vertices, then joining the
    marker to the block of the origin.

    Parameters
    ----------
    config : SimConfig
    rng : `~numpy.random.Generator`
    n : int
        Number of samples.
    horizon : int or None, optional
        Last layer. Defaults to ``config.horizon``.

    Returns
    -------
    assignments : `~numpy.ndarray`, shape (horizon + 1, n, k + 1)
    """
    horizon = config.horizon if horizon is None else horizon
    graph, k = config.graph, config.k
    state = np.broadcast_to(np.arange(k + 1, dtype=np.int64), (n, k + 1))
    for _ in range(config.depth + 1):
        state = sweep_layer(state, _layer_masks(rng, config.p, n, graph.n_edges), graph)

    state = np.array(state)
    state[:, k] = state[:, config.origin]
    state = canonical_rows(state)

    layers = [state]
    for _ in range(horizon):
        state = sweep_layer(state, _layer_masks(rng, config.p, n, graph.n_edges), graph)
        layers.append(state)
    return np.stack(layers)


def sample_chain_path(config, rng=None, initial=None, layers=None):
    """
    Sample the patterns of layers ``0, ..., horizon``.

    Parameters
    ----------
    config : SimConfig
    rng : `~numpy.random.Generator` or None, optional
        Defaults to a generator seeded with ``config.seed``.
    initial : Pattern or None, optional
        Pattern of layer 0. Sampled if None.
    layers : sequence of LayerConfig or None, optional
        Bonds of layers ``1, ..., horizon``. Sampled if None.

    Returns
    -------
    path : list of Pattern
    """
    rng = np.random.default_rng(config.seed) if rng is None else rng
    graph, k = config.graph, config.k
    if initial is None:
        state = sample_patterns(config, rng, 1, horizon=0)[0]
    else:
        state = np.array([initial.assignment], dtype=np.int64)

    if layers is None:
        masks = [_layer_masks(rng, config.p, 1, graph.n_edges) for _ in range(config.horizon)]
    else:
        if len(layers) != config.horizon:
            raise ValueError(f"Expected {config.horizon} layer configurations, but got {len(layers)}")
        masks = [np.array([layer.open_mask], dtype=np.int64) for layer in layers]

    path = [state]
    for mask in masks:
        state = sweep_layer(state, mask, graph)
        path.append(state)
    return [Pattern(k, tuple(row[0])) for row in path]


def _window_edges(k, n_layers, horizontal, vertical, wrap=True):
    """
    Edges of a window of `n_layers` layers of the cylinder, vertex ``(x, j)`` having index ``j * k + x``.

    `horizontal` lists the layers whose cycle edges are included, `vertical` the layers ``j`` whose edges to
    layer ``j - 1`` are included. Horizontal edges close the cycle if `wrap` is True.
    """
    x = np.arange(k)
    h = x if wrap else x[:-1]
    u = [j * k + h for j in horizontal] + [j * k + x for j in vertical]
    v = [j * k + (h + 1) % k for j in horizontal] + [(j - 1) * k + x for j in vertical]
    return np.concatenate(u), np.concatenate(v), n_layers * k


def _window_components(rng, p, edges, n):
    """Component labels of `n` independent samples of a window, shape (n, n_vertices)."""
    u, v, n_vertices = edges
    n_edges = len(u)
    labels = list()
    batch = max(1, WINDOW_BATCH_EDGES // max(n_edges, 1))
    for start in range(0, n, batch):
        size = min(batch, n - start)
        open_edges = rng.random((size, n_edges)) < p
        sample, edge = np.nonzero(open_edges)
        offset = sample * n_vertices
        graph = coo_matrix(
            (np.ones(len(edge), dtype=np.int8), (u[edge] + offset, v[edge] + offset)),
            shape=(size * n_vertices, size * n_vertices),
        )
        _, flat = connected_components(graph, directed=False)
        labels.append(flat.reshape((size, n_vertices)))
    return np.concatenate(labels)


def _wtilde0(config, rng, n):
    """Vertices of layer 0 joined to the origin by open paths in layer 0 and above."""
    k, depth = config.k, config.depth
    edges = _window_edges(
        k, depth + 1, horizontal=range(depth + 1), vertical=range(1, depth + 1), wrap=not config.strip
    )
    labels = _window_components(rng, config.p, edges, n)
    return (labels[:, :k] == labels[:, [config.origin]]).sum(axis=1)


def _wbar(config, rng, n, layer):
    """Vertices of layer `layer` joined to the origin without the horizontal edges of layers 0 and `layer`."""
    k = config.k
    if layer < 1:
        raise ValueError(f"Layer must be at least 1, but got {layer}")
    edges = _window_edges(
        k, layer + 1, horizontal=range(1, layer), vertical=range(1, layer + 1), wrap=not config.strip
    )
    labels = _window_components(rng, config.p, edges, n)
    return (labels[:, layer * k : (layer + 1) * k] == labels[:, [config.origin]]).sum(axis=1)


def _chain_values(config, rng, n, functional, params):
    layer = params.get("n", 0)
    if layer < 0:
        raise ValueError(f"Layer must be nonnegative, but got {layer}")
    k = config.k
    if config.graph.n_edges > MAX_MASK_BITS:
        raise CapacityError(f"Layer configurations of C_{k} do not fit in {MAX_MASK_BITS}-bit masks")
    states = sample_patterns(config, rng, n, horizon=layer)[layer]
    if functional == "marginal":
        x = params["x"]
        x = Pattern.from_string(x, k=k) if isinstance(x, str) else x
        return np.all(states == np.array(x.assignment), axis=1)
    if functional == "connection":
        v = params.get("v", config.origin)
        if not 0 <= v < k:
            raise ValueError(f"Vertex {v} is not in 0..{k - 1}")
        return states[:, v] == states[:, k]
    return (states[:, :k] == states[:, k : k + 1]).sum(axis=1)


def _sample_values(config, rng, n, functional, params):
    """Values of a functional on `n` independent samples."""
    if functional in CHAIN_FUNCTIONALS:
        return _chain_values(config, rng, n, functional, params)
    if functional == "wtilde0":
        return _wtilde0(config, rng, n)
    return _wbar(config, rng, n, params["n"])


def _block_sums(block, config, functional, params):
    """Sum and sum of squares of a functional over one block of samples."""
    size, seed = block
    values = _sample_values(config, np.random.default_rng(seed), size, functional, params).astype(np.float64)
    return np.array([values.sum(), (values**2).sum()])


@dataclass(frozen=True)
class Estimate:
    """
    Monte Carlo estimate of the expectation of a functional. Unpacks as ``mean, std_error``.

    Attributes
    ----------
    config : SimConfig
    functional : str
    params : dict
    mean : float
    std_error : float
    """

    config: SimConfig
    functional: str
    mean: float
    std_error: float
    params: dict = field(default_factory=dict)

    def __iter__(self):
        yield self.mean
        yield self.std_error

    @property
    def samples(self):
        return self.config.samples

    def to_dict(self):
        params = {key: (str(value) if isinstance(value, Pattern) else value) for key, value in self.params.items()}
        return {
            "config": self.config.to_dict(),
            "functional": self.functional,
            "params": params,
            "mean": self.mean,
            "std_error": self.std_error,
            "samples": self.samples,
            "seed": self.config.seed,
        }


def estimate(config, functional, processes=1, **params):
    """
    Estimate the expectation of a functional of the percolation configuration.

    Parameters
    ----------
    config : SimConfig
    functional : {"marginal", "connection", "W", "wtilde0", "wbar"}
        * ``"marginal"``: indicator that the pattern of layer ``n`` is ``x``;
        * ``"connection"``: indicator that ``(v, n)`` is infected;
        * ``"W"``: number of infected vertices of layer ``n``;
        * ``"wtilde0"``: number of vertices of layer 0 joined to the origin in layer 0 and the ``depth`` layers
          above it;
        * ``"wbar"``: number of vertices of layer ``n`` joined to the origin by edges up to layer ``n``, without
          the horizontal edges of layers 0 and ``n``.
    processes : int, optional
        Number of worker processes. Estimates do not depend on it.
    params : keyword arguments
        ``n``, ``x`` and ``v`` as required by `functional`.

    Returns
    -------
    estimate : Estimate
        Sample mean and its standard error.

    Raises
    ------
    ValueError : if `functional` is unknown.
    """
    if functional not in FUNCTIONALS:
        raise ValueError(f"Unknown functional {functional!r}; expected one of {FUNCTIONALS}")
    if functional == "marginal" and "x" not in params:
        raise ValueError("The marginal functional requires a pattern `x`")
    if functional == "wbar" and "n" not in params:
        raise ValueError("The wbar functional requires a layer `n`")

    n_blocks = ceil(config.samples / BLOCK_SIZE)
    sizes = [min(BLOCK_SIZE, config.samples - i * BLOCK_SIZE) for i in range(n_blocks)]
    seeds = np.random.SeedSequence(config.seed).spawn(n_blocks)
    log.info(f"Sampling {functional} over {config.samples} samples in {n_blocks} block(s)")

    sums = pmap(
        _block_sums,
        list(zip(sizes, seeds)),
        kwargs=dict(config=config, functional=functional, params=params),
        processes=processes,
        ntotal=n_blocks,
    )
    total, squares = last(isum(sums))

    n = config.samples
    mean = total / n
    variance = max(squares - n * mean**2, 0.0) / (n - 1) if n > 1 else 0.0
    return Estimate(config=config, functional=functional, mean=mean, std_error=sqrt(variance / n), params=params)
