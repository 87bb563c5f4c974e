# -*- coding: utf-8 -*-
"""
Onset of monotonicity
=====================

One-step comparisons of pattern-chain transition probabilities. By the Markov property, monotonicity at a
single layer ``n`` implies monotonicity at every later layer.
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from warnings import warn

import numpy as np

from ..linalg import left_multiply
from ..patterns import cylinder_chain
from ..utils import InconclusiveComparisonWarning, as_fraction, check_probability
from .marginals import EXACT_MAX_STEPS, exact_propagate, layer_law, propagate

MONOTONE_RTOL = 1e-12
DEFAULT_N_MAX = 64

log = logging.getLogger(__name__)


def _start_rows(chain, start_set):
    """Identity rows of the starting patterns."""
    if start_set is None:
        positions = np.arange(len(chain))
    else:
        positions = [chain.position(y) for y in start_set]
    return np.eye(len(chain), dtype=int)[positions]


def _compare(current, following, rtol):
    """
    Classify one-step comparisons of nonnegative arrays on a common scale.

    Returns
    -------
    violated : bool
        Whether some entry grows by more than the relative tolerance.
    tied : bool
        Whether some entry grows, but within the relative tolerance.
    """
    excess = following - current
    slack = rtol * np.maximum(current, following)
    violated = bool(np.any(excess > slack))
    tied = bool(np.any((excess > 0) & (excess <= slack)))
    return violated, tied


def check_monotone_at(k, p, n, start_set=None, origin=0, exact=False, rtol=MONOTONE_RTOL):
    """
    Whether ``P(X_{n+1}^y = x) <= P(X_n^y = x)`` for every attainable ``x`` and every starting pattern ``y``.

    A positive answer at layer ``n`` certifies every later layer as well.

    Parameters
    ----------
    k : int
        Circumference.
    p : float or Fraction
        Percolation parameter.
    n : int
        Layer.
    start_set : iterable of Pattern or None, optional
        Starting patterns. Defaults to every attainable infected pattern.
    origin : int, optional
    exact : bool, optional
        If True, the comparison is carried out over the rationals. Limited to ``n <= 16``.
    rtol : float, optional
        Relative tolerance of floating-point comparisons. Growth within this tolerance counts as a tie, which
        is resolved exactly for ``n <= 16`` and otherwise reported with an
        :class:`InconclusiveComparisonWarning`.

    Returns
    -------
    monotone : bool
    """
    check_probability(p)
    chain = cylinder_chain(k, origin=origin)
    rows = _start_rows(chain, start_set)

    if exact:
        p = as_fraction(p)
        current = exact_propagate(chain, p, rows, n)
        following = left_multiply(current, chain.transient_matrix(p))
        return bool(np.all(following <= current))

    current, _ = propagate(chain, float(p), rows, n)
    following = left_multiply(current, chain.transient_matrix(float(p)))
    violated, tied = _compare(current, following, rtol)
    if violated or not tied:
        return not violated
    if n <= EXACT_MAX_STEPS:
        log.debug(f"Tie at layer {n} for k = {k}, p = {p}; resolving over the rationals")
        return check_monotone_at(k, p, n, start_set=start_set, origin=origin, exact=True)
    warn(
        f"Transition probabilities at layers {n} and {n + 1} agree within a relative tolerance of {rtol}",
        InconclusiveComparisonWarning,
    )
    return True


def empirical_onset(k, p, n_max=DEFAULT_N_MAX, origin=0, exact=False):
    """
    Smallest layer from which the transition probabilities of the pattern chain are non-increasing.

    Parameters
    ----------
    k : int
    p : float or Fraction
        Percolation parameter in (0, 1).
    n_max : int, optional
        Largest layer searched, at least 1.
    origin : int, optional
    exact : bool, optional
        Carry out every comparison over the rationals. Limited to ``n_max <= 16``.

    Returns
    -------
    onset : int or None
        None if monotonicity does not set in up to `n_max`.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, but got {n_max}")
    check_probability(p, open_interval=True)
    if exact:
        for n in range(n_max + 1):
            if check_monotone_at(k, p, n, origin=origin, exact=True):
                return n
        return None

    chain = cylinder_chain(k, origin=origin)
    Q = chain.transient_matrix(float(p))
    current = np.eye(len(chain))
    for n in range(n_max + 1):
        following = left_multiply(current, Q)
        violated, tied = _compare(current, following, MONOTONE_RTOL)
        if not violated:
            if not tied or check_monotone_at(k, p, n, origin=origin):
                return n
        norm = following.max(axis=1, keepdims=True)
        current = following / np.where(norm > 0, norm, 1)
    return None


@dataclass(frozen=True)
class ImplicationReport:
    """
    The four monotonicity statements between layers ``n`` and ``n + 1``.

    Attributes
    ----------
    transitions : bool
        Transition probabilities between attainable patterns are non-increasing.
    patterns : bool
        Laws of the infection patterns are non-increasing.
    connections : bool
        Connection probabilities from the origin are non-increasing.
    expectation : bool
        The expected number of infected vertices is non-increasing.
    """

    k: int
    p: float
    n: int
    transitions: bool
    patterns: bool
    connections: bool
    expectation: bool
    statements: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "statements", (self.transitions, self.patterns, self.connections, self.expectation))

    @property
    def consistent(self):
        """Whether each statement implies the next one."""
        return all(later or not earlier for earlier, later in zip(self.statements, self.statements[1:]))

    def to_dict(self):
        return {
            "k": self.k,
            "p": float(self.p),
            "n": self.n,
            "statements": list(self.statements),
            "consistent": self.consistent,
        }


def _non_increasing(current, following, rtol):
    current, following = np.asarray(current, dtype=float), np.asarray(following, dtype=float)
    return not _compare(current, following, rtol)[0]


def verify_implication_chain(k, p, n, origin=0, rtol=MONOTONE_RTOL):
    """
    Evaluate the four monotonicity statements between layers ``n`` and ``n + 1``.

    Monotonicity of transition probabilities implies monotonicity of pattern laws, which implies monotonicity
    of connection probabilities, which implies monotonicity of the expected number of infected vertices.

    Parameters
    ----------
    k : int
    p : float
        Percolation parameter in (0, 1).
    n : int
    origin : int, optional
    rtol : float, optional

    Returns
    -------
    report : ImplicationReport
    """
    check_probability(p, open_interval=True)
    chain = cylinder_chain(k, origin=origin)
    current, following = (layer_law(k, p, m, origin=origin) for m in (n, n + 1))

    infected = np.array([[v in x.infected for x in chain.states] for v in range(k)], dtype=float)
    counts = chain.infected_counts

    return ImplicationReport(
        k=k,
        p=p,
        n=n,
        transitions=check_monotone_at(k, p, n, origin=origin, rtol=rtol),
        patterns=_non_increasing(current, following, rtol),
        connections=_non_increasing(infected @ current, infected @ following, rtol),
        expectation=_non_increasing([current @ counts], [following @ counts], rtol),
    )


def implication_sweep(ks, ps, ns, origin=0):
    """
    Look for counterexamples to the ordering of the monotonicity statements over a parameter grid.

    Parameters
    ----------
    ks, ps, ns : iterables
        Circumferences, percolation parameters and layers.
    origin : int, optional

    Returns
    -------
    counterexamples : list of ImplicationReport
        Reports whose statements are not ordered; empty if the ordering holds everywhere.
    """
    counterexamples = list()
    for k, p, n in product(ks, ps, ns):
        report = verify_implication_chain(k, p, n, origin=origin)
        if not report.consistent:
            counterexamples.append(report)
    return counterexamples
