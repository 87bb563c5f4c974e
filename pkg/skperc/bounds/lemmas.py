# -*- coding: utf-8 -*-
"""
Lemma checks
============

Exact evaluations on the pattern chain of the probability estimates behind the onset bounds: survival of
the infection, connection of a whole layer, and connection along a monotone path.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from ..io.reports import CheckResult
from ..linalg import left_multiply
from ..monotonicity import layer_law
from ..patterns import canonicalize, connectivity_kernel, cylinder_chain, evaluate
from ..patterns.space import STAR
from ..utils import ProbabilityRangeError, check_probability
from .constants import c1, c2, insulation_ratio
from .params import _cycle_partition


@dataclass(frozen=True)
class LemmaCheck:
    """
    Exact probability compared with its closed-form lower bound.

    Attributes
    ----------
    probability : float or Fraction
    bound : float
    passed : bool
    """

    probability: object
    bound: float
    passed: bool

    def __bool__(self):
        return self.passed

    @property
    def margin(self):
        return float(self.probability) - self.bound

    def to_dict(self):
        return {"probability": float(self.probability), "bound": self.bound, "passed": self.passed}


def verify_survival_bound(k, p, horizon, atol=1e-14):
    """
    Check ``P^y(X_n is infected) <= min(1, k p c2(p)^(n - 1))`` for every attainable starting pattern ``y``
    and ``1 <= n <= horizon``.

    Parameters
    ----------
    k : int
    p : float
        Percolation parameter in (0, 1/3).
    horizon : int
        Largest layer checked.
    atol : float, optional

    Returns
    -------
    check : CheckResult
        Margins are the differences between the bound and the largest survival probability at each layer.

    Raises
    ------
    ProbabilityRangeError : if ``p >= 1/3``.
    """
    check_probability(p, open_interval=True)
    if p >= 1 / 3:
        raise ProbabilityRangeError(f"The survival bound holds for p < 1/3, but got {p}")
    p = float(p)
    Q = cylinder_chain(k).transient_matrix(p)

    layers = np.arange(1, horizon + 1)
    largest = np.empty(horizon)
    survival = np.ones(Q.shape[0])
    for n in layers:
        survival = Q @ survival
        largest[n - 1] = survival.max()
    bound = np.minimum(1.0, k * p * c2(p) ** (layers - 1))
    return CheckResult.from_arrays("survival", bound - largest, atol=atol, k=k, p=p, n=layers)


def connection_lemma_check(k, p):
    """
    Probability that every vertex of layer 3 is connected to every other through the horizontal edges of
    layer 1 and the edges of layers 2 and 3, against its lower bound ``p c1(p)^(k - 2)``.

    Parameters
    ----------
    k : int
    p : float or Fraction
        Percolation parameter in (0, 1). Fractions give an exact probability.

    Returns
    -------
    check : LemmaCheck
    """
    check_probability(p, open_interval=True)
    exact = isinstance(p, Fraction)
    kernel = connectivity_kernel(k)
    matrix = evaluate(kernel, p)

    law = np.array([Fraction(0)] * len(kernel), dtype=object) if exact else np.zeros(len(kernel))
    for mask in range(2**k):
        n_open = bin(mask).count("1")
        pattern = canonicalize(_cycle_partition(k, mask) + [[STAR]], k=k)
        law[kernel.local_indices([kernel.space.index_of(pattern)])[0]] += p**n_open * (1 - p) ** (k - n_open)

    law = left_multiply(left_multiply(law, matrix), matrix)
    target = canonicalize([list(range(k)), [STAR]], k=k)
    probability = law[kernel.local_indices([kernel.space.index_of(target)])[0]]
    bound = float(p) * c1(float(p)) ** (k - 2)
    return LemmaCheck(probability=probability, bound=bound, passed=bool(float(probability) >= bound))


def path_lemma_bound(p, m, d):
    """Lower bound ``C(m + d, d) p^(d + m + 1) r(p)^min(d, m)`` on the probability of a monotone connection."""
    return comb(m + d, d) * float(p) ** (d + m + 1) * insulation_ratio(float(p)) ** min(d, m)


def path_lemma_check(k, p, m, d):
    """
    Probability that ``(0, 0)`` is connected to ``(d, m + 1)`` through the edges of layers ``1, ..., m + 1``,
    against its lower bound.

    Parameters
    ----------
    k : int
    p : float or Fraction
        Percolation parameter in (0, 1). Fractions give an exact probability.
    m : int
        Nonnegative.
    d : int
        Vertex of layer ``m + 1``, in ``0, ..., k - 1``.

    Returns
    -------
    check : LemmaCheck
    """
    check_probability(p, open_interval=True)
    if m < 0 or not 0 <= d < k:
        raise ValueError(f"Expected m >= 0 and 0 <= d < {k}, but got m = {m} and d = {d}")
    exact = isinstance(p, Fraction)
    chain = cylinder_chain(k)
    start = canonicalize([[STAR, 0]] + [[v] for v in range(1, k)], k=k)

    law = layer_law(k, p if exact else float(p), m + 1, start=start, exact=exact)
    mask = [d in x.infected for x in chain.states]
    probability = sum(law[mask]) if exact else float(law[mask].sum())
    bound = path_lemma_bound(p, m, d)
    return LemmaCheck(probability=probability, bound=bound, passed=bool(float(probability) >= bound))
