# -*- coding: utf-8 -*-
"""
Marginals of the pattern chain
==============================

Exact laws of the infection pattern of layer n, either from a fixed pattern or from the law of the layer-0
pattern, and the connection probabilities and expected number of infected vertices derived from them.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..linalg import fraction_array, left_multiply, left_power
from ..patterns import Pattern, cylinder_chain
from ..qsd import compute_qsd
from ..utils import as_fraction, check_probability

STATIONARY_INITIAL = "stationary-initial"
EXACT_MAX_STEPS = 16
DIRECT_STEPS = 4096


def initial_distribution(k, p, origin=0, exact=False):
    """
    Law of the layer-0 pattern of the cylinder C_k x Z.

    The connectivity partition of layer 0 follows the stationary law of the connectivity chain, and the
    marker joins the block of the origin.

    Parameters
    ----------
    k : int
        Circumference.
    p : float or Fraction
        Percolation parameter.
    origin : int, optional
        Vertex of the origin.
    exact : bool, optional
        If True, probabilities are exact Fractions.

    Returns
    -------
    law : dict
        Probability of each attainable infected pattern, keyed by :class:`Pattern`.
    """
    chain = cylinder_chain(k, origin=origin)
    law = chain.initial_distribution(as_fraction(p) if exact else float(p))
    return dict(zip(chain.states, law))


def start_vector(chain, p, start, exact=False):
    """
    Starting distribution over the attainable infected patterns.

    Parameters
    ----------
    chain : PatternChain
    p : float or Fraction
    start : Pattern, str or array_like
        Starting pattern, its text form, the tag ``"stationary-initial"`` for the law of the layer-0 pattern,
        or an explicit distribution.
    exact : bool, optional

    Returns
    -------
    mu : `~numpy.ndarray`
    """
    if isinstance(start, str) and start == STATIONARY_INITIAL:
        return chain.initial_distribution(p)
    if isinstance(start, str):
        start = Pattern.from_string(start, k=chain.k)
    if isinstance(start, Pattern):
        mu = np.zeros(len(chain), dtype=int)
        mu[chain.position(start)] = 1
        return fraction_array(mu) if exact else mu.astype(float)
    mu = np.asarray(start)
    if mu.shape != (len(chain),):
        raise ValueError(f"Expected a distribution over {len(chain)} attainable patterns, but got shape {mu.shape}")
    return fraction_array(mu) if exact else mu.astype(float)


def propagate(chain, p, rows, n):
    """
    Rows of distributions after ``n`` steps of the transient chain, with a logarithmic scale per row.

    Up to a few thousand steps rows are multiplied and renormalized step by step; beyond, the transient
    matrix divided by its dominant eigenvalue is raised to the power ``n`` by repeated squaring.

    Parameters
    ----------
    chain : PatternChain
    p : float
    rows : `~numpy.ndarray`, shape (M, N)
        Starting distributions, one per row.
    n : int

    Returns
    -------
    scaled : `~numpy.ndarray`, shape (M, N)
    log_scale : `~numpy.ndarray`, shape (M,)
        The distributions after ``n`` steps are ``scaled * exp(log_scale)[:, None]``.
    """
    Q = chain.transient_matrix(p)
    rows = np.array(rows, dtype=float, ndmin=2)
    log_scale = np.zeros(rows.shape[0])

    if n > DIRECT_STEPS:
        eigenvalue = compute_qsd(chain.absorbing_chain(p)).eigenvalue
        scaled = left_power(rows, Q / eigenvalue, n)
        return scaled, log_scale + n * np.log(eigenvalue)

    for _ in range(n):
        rows = left_multiply(rows, Q)
        norm = rows.max(axis=1)
        norm[norm <= 0] = 1
        rows /= norm[:, None]
        log_scale += np.log(norm)
    return rows, log_scale


def exact_propagate(chain, p, rows, n):
    """Exact rows of distributions after ``n`` steps of the transient chain, for rational `p`."""
    if n > EXACT_MAX_STEPS:
        raise ValueError(f"Exact evaluation is limited to {EXACT_MAX_STEPS} steps, but {n} were requested")
    Q = chain.transient_matrix(as_fraction(p))
    rows = fraction_array(np.array(rows, ndmin=2))
    for _ in range(n):
        rows = left_multiply(rows, Q)
    return rows


def layer_law(k, p, n, start=STATIONARY_INITIAL, origin=0, exact=False):
    """
    Law of the pattern of layer ``n`` over the attainable infected patterns.

    The missing mass is the probability that the origin does not reach layer ``n``.

    Parameters
    ----------
    k : int
    p : float or Fraction
    n : int
    start : Pattern, str or array_like, optional
        Starting pattern or the tag ``"stationary-initial"``.
    origin : int, optional
    exact : bool, optional
        Exact Fractions, for ``n <= 16``.

    Returns
    -------
    law : `~numpy.ndarray`
    """
    check_probability(p)
    if n < 0:
        raise ValueError(f"Layer must be nonnegative, but got {n}")
    chain = cylinder_chain(k, origin=origin)
    if exact:
        p = as_fraction(p)
        return exact_propagate(chain, p, start_vector(chain, p, start, exact=True), n)[0]
    scaled, log_scale = propagate(chain, float(p), start_vector(chain, float(p), start), n)
    return scaled[0] * np.exp(log_scale[0])


def marginal(k, p, start, x, n, origin=0, log=False, exact=False):
    """
    Probability that the pattern of layer ``n`` is ``x``.

    Parameters
    ----------
    k : int
        Circumference.
    p : float or Fraction
        Percolation parameter.
    start : Pattern, str or array_like
        Attainable starting pattern of layer 0, or the tag ``"stationary-initial"`` for the law of the
        layer-0 pattern of the half-infinite cylinder.
    x : Pattern or str
        Pattern of layer ``n``.
    n : int
        Layer.
    origin : int, optional
    log : bool, optional
        If True, the natural logarithm of the probability is returned, which remains representable at very
        large ``n``.
    exact : bool, optional
        If True, the probability is an exact Fraction. Limited to ``n <= 16``.

    Returns
    -------
    probability : float or Fraction

    Raises
    ------
    ValueError : if `x` is not a pattern of the state space.
    """
    check_probability(p)
    chain = cylinder_chain(k, origin=origin)
    if isinstance(x, str):
        x = Pattern.from_string(x, k=k)
    if x not in chain.space:
        raise ValueError(f"{x} is not a pattern on {k} vertices")

    if not x.is_infected:
        return _uninfected_marginal(chain, p, start, x, n, log=log, exact=exact)
    if x not in chain.states:
        return Fraction(0) if exact else (-np.inf if log else 0.0)

    column = chain.position(x)
    if exact:
        p = as_fraction(p)
        return exact_propagate(chain, p, start_vector(chain, p, start, exact=True), n)[0, column]

    scaled, log_scale = propagate(chain, float(p), start_vector(chain, float(p), start), n)
    value = scaled[0, column]
    if log:
        return float(np.log(value) + log_scale[0]) if value > 0 else -np.inf
    return float(value * np.exp(log_scale[0]))


def _uninfected_marginal(chain, p, start, x, n, log=False, exact=False):
    """Probability of an uninfected pattern, from the full transition matrix."""
    if exact:
        p = as_fraction(p)
    elif n > DIRECT_STEPS:
        raise ValueError(f"Uninfected patterns are only evaluated up to {DIRECT_STEPS} layers")
    else:
        p = float(p)
    mu = start_vector(chain, p, start, exact=exact)
    law = np.zeros(len(chain.space), dtype=object if exact else float)
    if exact:
        law[:] = Fraction(0)
    law[chain.attainable] = mu
    matrix = chain.transition_matrix(p)
    for _ in range(n):
        law = left_multiply(law, matrix)
    value = law[chain.space.index_of(x)]
    if log and not exact:
        return float(np.log(value)) if value > 0 else -np.inf
    return value


@dataclass
class MarginalCurve:
    """
    Laws of the patterns of layers ``0, ..., horizon``, stored as conditional laws and log-survival.

    Attributes
    ----------
    k : int
    p : float
    start : str
        Text form of the starting pattern, or ``"stationary-initial"``.
    horizon : int
    states : list of Pattern
        Attainable infected patterns, in column order.
    conditional : `~numpy.ndarray`, shape (horizon + 1, N)
        Law of layer ``n`` conditioned on the origin reaching it.
    log_survival : `~numpy.ndarray`, shape (horizon + 1,)
        Logarithm of the probability that the origin reaches layer ``n``.
    """

    k: int
    p: float
    start: str
    horizon: int
    states: list = field(repr=False)
    conditional: np.ndarray = field(repr=False)
    log_survival: np.ndarray = field(repr=False)

    def probabilities(self, n):
        """Unconditional probabilities of each pattern at layer ``n``."""
        return self.conditional[n] * np.exp(self.log_survival[n])

    def rows(self):
        """
        Iterate over rows of the CSV table ``n,x_pattern,probability,log_survival``.

        Yields
        ------
        row : tuple
        """
        for n in range(self.horizon + 1):
            for x, probability in zip(self.states, self.probabilities(n)):
                yield n, str(x), float(probability), float(self.log_survival[n])


def marginal_curve(k, p, start=STATIONARY_INITIAL, horizon=10, origin=0):
    """
    Laws of the patterns of every layer up to `horizon`.

    Parameters
    ----------
    k : int
    p : float
        Percolation parameter in (0, 1).
    start : Pattern, str or array_like, optional
        Starting pattern or the tag ``"stationary-initial"``.
    horizon : int, optional
    origin : int, optional

    Returns
    -------
    curve : MarginalCurve
    """
    check_probability(p, open_interval=True)
    chain = cylinder_chain(k, origin=origin)
    Q = chain.transient_matrix(p)
    law = start_vector(chain, p, start)

    conditional = np.empty((horizon + 1, len(chain)))
    log_survival = np.zeros(horizon + 1)
    total = law.sum()
    conditional[0] = law / total
    log_survival[0] = np.log(total)
    for n in range(1, horizon + 1):
        law = left_multiply(conditional[n - 1], Q)
        alive = law.sum()
        conditional[n] = law / alive
        log_survival[n] = log_survival[n - 1] + np.log(alive)

    label = start if isinstance(start, str) else str(start)
    return MarginalCurve(k, p, label, horizon, chain.states, conditional, log_survival)


def connection_probability(k, p, v, n, origin=0, exact=False):
    """
    Probability that the origin ``(o, 0)`` is connected to ``(v, n)`` by a path in the layers below ``n``.

    Parameters
    ----------
    k : int
    p : float or Fraction
    v : int
        Vertex of layer ``n``.
    n : int
        Layer, nonnegative.
    origin : int, optional
    exact : bool, optional

    Returns
    -------
    probability : float or Fraction
    """
    if not 0 <= v < k:
        raise ValueError(f"Vertex {v} is not in 0..{k - 1}")
    chain = cylinder_chain(k, origin=origin)
    law = layer_law(k, p, n, origin=origin, exact=exact)
    mask = np.array([v in x.infected for x in chain.states])
    return sum(law[mask]) if exact else float(law[mask].sum())


def expected_infected(k, p, n, origin=0, exact=False):
    """
    Expected number of vertices of layer ``n`` connected to the origin by a path in the layers below ``n``.

    Parameters
    ----------
    k : int
    p : float or Fraction
    n : int
    origin : int, optional
    exact : bool, optional

    Returns
    -------
    expectation : float or Fraction
    """
    chain = cylinder_chain(k, origin=origin)
    law = layer_law(k, p, n, origin=origin, exact=exact)
    if exact:
        return sum(int(c) * q for c, q in zip(chain.infected_counts, law))
    return float(law @ chain.infected_counts)
