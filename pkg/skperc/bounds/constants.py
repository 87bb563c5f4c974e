# -*- coding: utf-8 -*-
"""
Closed-form constants
=====================

The constants :math:`c_1(p)`, :math:`c_2(p)` and :math:`c_3(p)` entering the onset bounds, all of which
behave like :math:`p` as :math:`p \\to 0^+`.
"""
from dataclasses import dataclass
from math import ceil, e, log

import numpy as np

from ..utils import check_probability


def _unwrap(value):
    """Python float for 0-d results, arrays otherwise."""
    return float(value) if np.ndim(value) == 0 else value


def c1(p):
    """
    Lower bound on the probability that horizontally adjacent vertices of a layer are joined by an open
    path of length at most 7 reaching at most two layers below.

    .. math::

        c_1(p) = p + (1-p)p^3 + 3(1-p)^2p^5 + 9(1-p)^3p^7

    Parameters
    ----------
    p : array_like or float

    Returns
    -------
    out : array_like or float
    """
    p = np.asarray(p, dtype=float)
    q = 1 - p
    return _unwrap(p + q * p**3 + 3 * q**2 * p**5 + 9 * q**3 * p**7)


def c1_prime(p):
    """
    Variant of :func:`c1` for the two vertices at each end of a line graph, where paths may not wrap around.

    .. math::

        c_1'(p) = p + (1-p)p^3 + 2(1-p)^2p^5
    """
    p = np.asarray(p, dtype=float)
    q = 1 - p
    return _unwrap(p + q * p**3 + 2 * q**2 * p**5)


def c2(p):
    """
    Growth rate of the expected number of infected vertices per layer, for :math:`p < 1/3`.

    .. math::

        c_2(p) = p + 2p^2 + 2p^3 + 2p^4 + 4p^5 + 8p^6 + \\frac{64}{1 - 3p} p^7

    Parameters
    ----------
    p : array_like or float

    Returns
    -------
    out : array_like or float
        Infinite wherever :math:`p \\geq 1/3`.

    Examples
    --------
    >>> c2(0.34)
    inf
    """
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        tail = 64 / (1 - 3 * p) * p**7
        value = p + 2 * p**2 + 2 * p**3 + 2 * p**4 + 4 * p**5 + 8 * p**6 + tail
    return _unwrap(np.where(p < 1 / 3, value, np.inf))


def c3(p):
    """
    Constant controlling the spread of an infection path across a layer.

    .. math::

        c_3(p) = \\left( \\sqrt{\\frac{1}{p^2} + \\frac{e^2}{4}} - \\frac{e}{2} \\right)^{-1}

    Parameters
    ----------
    p : array_like or float
        Values in (0, 1].

    Returns
    -------
    out : array_like or float
    """
    p = np.asarray(p, dtype=float)
    return _unwrap(1 / (np.sqrt(1 / p**2 + e**2 / 4) - e / 2))


def insulation_ratio(p):
    """Probability ``(1 - p) / (1 - p(1 - p))`` that a vertical run is capped by a closed horizontal edge."""
    p = np.asarray(p, dtype=float)
    return _unwrap((1 - p) / (1 - p * (1 - p)))


def s_k(k):
    """``k^2 (1 + 2 / ln k)``, the inverse of the largest small parameter handled without chain analysis."""
    return k**2 * (1 + 2 / log(k))


def n_k(k):
    """Number of layers after which every attainable pattern reaches every other, ``floor((k + 2) / 2)``."""
    return (k + 2) // 2


@dataclass(frozen=True)
class BoundConstants:
    """
    Constants of the onset bounds at circumference `k` and percolation parameter `p`.

    Attributes
    ----------
    k : int
    p : float
    c1, c2, c3 : float
        Values of :func:`c1`, :func:`c2` and :func:`c3`. `c2` is infinite for ``p >= 1/3``.
    m : float
        ``k / (2 e c3)``, the number of layers over which an infection path is spread.
    m_prime : int
        ``ceil(m)``, at least 1.
    s_k : float
    n_k : int
    """

    k: int
    p: float
    c1: float
    c2: float
    c3: float
    m: float
    m_prime: int
    s_k: float
    n_k: int

    def to_dict(self):
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


def constants(k, p):
    """
    Evaluate every constant of the onset bounds.

    Parameters
    ----------
    k : int
        Circumference, at least 3.
    p : float
        Percolation parameter in (0, 1).

    Returns
    -------
    out : BoundConstants

    Raises
    ------
    ProbabilityRangeError : if `p` is not in (0, 1).
    """
    if k < 3:
        raise ValueError(f"Circumference must be at least 3, but got {k}")
    check_probability(p, open_interval=True)
    p = float(p)
    m = k / (2 * e * c3(p))
    return BoundConstants(
        k=k,
        p=p,
        c1=c1(p),
        c2=c2(p),
        c3=c3(p),
        m=m,
        m_prime=max(1, ceil(m)),
        s_k=s_k(k),
        n_k=n_k(k),
    )
