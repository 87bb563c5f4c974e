# -*- coding: utf-8 -*-
"""
Onset formulas
==============

Explicit layer counts after which transition probabilities of the pattern chain of C_k are non-increasing.
Each formula covers a range of percolation parameters; every one of them is evaluated in the log domain.
"""
from fractions import Fraction
from math import ceil, e

import numpy as np

from ..utils import CapacityError, ProbabilityRangeError, check_probability
from .constants import c1, c2, c3, insulation_ratio, s_k

K_CAP = 400
MAIN_PREFACTOR = 500
MAIN_BASE = Fraction(39, 20)


def _check_k(k):
    if k < 3:
        raise ValueError(f"Circumference must be at least 3, but got {k}")


def _finish(log_value, log):
    """Return a log-domain value or its exponential."""
    if log:
        return float(log_value)
    with np.errstate(over="ignore"):
        return float(np.exp(log_value))


def N_main(k, base=MAIN_BASE, log=False):
    """
    Uniform onset of monotonicity ``ceil(500 k^6 base^k)``, valid for every ``p`` in (0, 1).

    Parameters
    ----------
    k : int
        Circumference, at least 3.
    base : float or Fraction, optional
        Exponential base, 1.95 by default. ``base=2`` gives the looser ``500 k^6 2^k``.
    log : bool, optional
        If True, the natural logarithm of ``500 k^6 base^k`` is returned instead, for any `k`.

    Returns
    -------
    N : int or float

    Raises
    ------
    CapacityError : if `k` exceeds ``K_CAP`` and `log` is False.

    Examples
    --------
    >>> N_main(3)
    2702722
    >>> N_main(3, base=2)
    2916000
    """
    _check_k(k)
    base = Fraction(repr(base)) if isinstance(base, float) else Fraction(base)
    if log:
        return float(np.log(MAIN_PREFACTOR) + 6 * np.log(k) + k * np.log(float(base)))
    if k > K_CAP:
        raise CapacityError(f"N_main is evaluated exactly up to k = {K_CAP}, but got {k}; use log=True")
    return ceil(MAIN_PREFACTOR * k**6 * base**k)


def _log_n0(k):
    return np.log(3 * s_k(k))


def _log_n1(k, p):
    p = np.asarray(p, dtype=float)
    m = k / (2 * e * c3(p))
    with np.errstate(divide="ignore"):
        return (
            np.log(-np.log(p * (1 - p)))
            + np.log(m + 5)
            + np.log(k**2 + 1.5 * k + 2)
            + 2.5 * np.log(k)
            + (m + 4) * (np.log(c2(p)) - np.log(p))
            - (k / 2) * np.log(insulation_ratio(p))
            - np.log(1 - p)
            - (k - 2) * np.log(c1(1 - p))
        )


def _log_n2(k, p):
    p = np.asarray(p, dtype=float)
    m = k / (2 * e * c3(p))
    return (
        np.log(-np.log(p * (1 - p)))
        + np.log(m + 5)
        + np.log(k**2 + 1.5 * k + 2)
        + 1.5 * np.log(k)
        - (m + 5) * np.log(p)
        - (m + 1) * np.log(insulation_ratio(p))
        - np.log(1 - p)
        - (k - 2) * np.log(c1(1 - p))
    )


def _log_n3(k, p):
    p = np.asarray(p, dtype=float)
    return (
        np.log(-np.log(p * (1 - p)))
        + np.log(1.5 * (k**2 + 3 * k + 3))
        - 4 * np.log(p)
        - (k - 2) * np.log(c1(p))
    )


def _log_n4(k, p):
    p = np.asarray(p, dtype=float)
    return np.log((k**2 + 4 * k) * np.log(1 - p) / (2 * np.log(2 * k * (1 - p))))


def N0(k, log=False):
    """
    Onset ``3 k^2 (1 + 2 / ln k)`` for ``p <= 1 / (k^2 (1 + 2 / ln k))``.

    Parameters
    ----------
    k : int
    log : bool, optional
        Return the natural logarithm instead.
    """
    _check_k(k)
    return _finish(_log_n0(k), log)


def N1(k, p, log=False):
    """
    Onset for small and moderate ``p``, from the minorization by the law of a percolated layer.

    .. math::

        N_1(k, p) = \\frac{-\\ln(p(1-p)) (m+5) (k^2 + \\frac{3}{2}k + 2) k^{5/2} c_2(p)^{m+4}}
                         {p^{m+4} r(p)^{k/2} (1-p) c_1(1-p)^{k-2}}

    where :math:`m = k / (2 e c_3(p))` and :math:`r(p) = (1-p)/(1-p(1-p))`.

    Parameters
    ----------
    k : int
        Circumference, at least 3.
    p : float
        Percolation parameter in (0, 1). The bound is infinite for ``p >= 1/3``.
    log : bool, optional
        Return the natural logarithm instead.

    Returns
    -------
    N : float
    """
    _check_k(k)
    check_probability(p, open_interval=True)
    return _finish(_log_n1(k, float(p)), log)


def N2(k, p, log=False):
    """
    Onset for ``p <= 1/2``, from the minorization by the law of a percolated layer.

    .. math::

        N_2(k, p) = \\frac{-\\ln(p(1-p)) (m+5) (k^2 + \\frac{3}{2}k + 2) k^{3/2}}
                         {p^{m+5} r(p)^{m+1} (1-p) c_1(1-p)^{k-2}}

    Raises
    ------
    ProbabilityRangeError : if ``p > 1/2``.
    """
    _check_k(k)
    check_probability(p, open_interval=True)
    if p > 1 / 2:
        raise ProbabilityRangeError(f"N2 holds for p <= 1/2, but got {p}")
    return _finish(_log_n2(k, float(p)), log)


def N3(k, p, log=False):
    """
    Onset for every ``p`` in (0, 1), from the minorization by the fully connected pattern.

    .. math::

        N_3(k, p) = \\frac{-\\ln(p(1-p)) \\frac{3}{2} (k^2 + 3k + 3)}{p^4 c_1(p)^{k-2}}
    """
    _check_k(k)
    check_probability(p, open_interval=True)
    return _finish(_log_n3(k, float(p)), log)


def N4(k, p, log=False):
    """
    Onset ``(k^2 + 4k) ln(1 - p) / (2 ln(2k (1 - p)))`` for ``p > 1 - 1/(2k)``.

    Raises
    ------
    ProbabilityRangeError : if ``p <= 1 - 1/(2k)``.
    """
    _check_k(k)
    check_probability(p, open_interval=True)
    if p <= 1 - 1 / (2 * k):
        raise ProbabilityRangeError(f"N4 holds for p > 1 - 1/(2k) = {1 - 1 / (2 * k)}, but got {p}")
    return _finish(_log_n4(k, float(p)), log)


def applicable_formulas(k, p):
    """
    Onset formulas valid at ``(k, p)``.

    Returns
    -------
    formulas : dict
        Values keyed by formula name among ``"N0", "N1", "N2", "N3", "N4"``.
    """
    values = {"N3": N3(k, p)}
    if p <= 1 / s_k(k):
        values["N0"] = N0(k)
    if p < 1 / 3:
        values["N1"] = N1(k, p)
    if p <= 1 / 2:
        values["N2"] = N2(k, p)
    if p > 1 - 1 / (2 * k):
        values["N4"] = N4(k, p)
    return dict(sorted(values.items()))
