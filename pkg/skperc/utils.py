# -*- coding: utf-8 -*-
"""
Utility functions
=================

Error types, warning categories and small numerical helpers shared by all subpackages.
"""

from contextlib import contextmanager
from fractions import Fraction
from os import cpu_count
from warnings import catch_warnings, simplefilter

import numpy as np

CPU_COUNT = cpu_count() or 1


class InvalidPartitionError(ValueError):
    """Raised when a collection of blocks is not a partition of the vertices and the marker."""


class CapacityError(ValueError):
    """Raised when a requested size exceeds a configured cap."""


class ProbabilityRangeError(ValueError):
    """Raised when a percolation parameter lies outside the range of an operation."""


class StructuralError(ValueError):
    """Raised when a matrix does not describe a valid absorbing chain."""


class UnboundedOnsetError(ValueError):
    """Raised when minorization constants cannot bound the onset of monotonicity."""


class DivergentSeriesError(ValueError):
    """Raised when a series bound is requested outside its domain of convergence."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative method fails to converge."""


class ExtinctionError(RuntimeError):
    """Raised when a chain has no surviving mass left."""


class OracleBudgetError(RuntimeError):
    """Raised when an exhaustive oracle would exceed its enumeration budget."""


class InconclusiveComparisonWarning(RuntimeWarning):
    """Emitted when two probabilities agree within tolerance and cannot be resolved exactly."""


class CensusTruncatedWarning(RuntimeWarning):
    """Emitted when a walk census is cut short by its budget."""


class MinimalPathTieWarning(RuntimeWarning):
    """Emitted when two open paths of equal size compete for the minimal path."""


@contextmanager
def suppress_warnings(category=Warning):
    """
    Context manager to suppress warnings of a given category.

    Parameters
    ----------
    category : type, optional
        Warning category to silence. All warnings are silenced by default.
    """
    with catch_warnings():
        simplefilter("ignore", category=category)
        yield


def as_fraction(value):
    """
    Exact rational representation of a number.

    Floats are read through their shortest decimal representation, so that ``0.1`` becomes ``1/10``
    rather than the binary expansion of the float.

    Parameters
    ----------
    value : int, float, str, or Fraction

    Returns
    -------
    out : Fraction

    Examples
    --------
    >>> as_fraction(0.35)
    Fraction(7, 20)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def check_probability(p, *, open_interval=False, name="p"):
    """
    Validate a percolation parameter.

    Parameters
    ----------
    p : float or Fraction
        Parameter to validate.
    open_interval : bool, optional
        If True, the endpoints 0 and 1 are rejected.
    name : str, optional
        Name used in the error message.

    Returns
    -------
    p : float or Fraction
        The validated parameter, unchanged.

    Raises
    ------
    ProbabilityRangeError : if `p` is out of range.
    """
    if open_interval:
        if not 0 < p < 1:
            raise ProbabilityRangeError(f"{name} must lie in the open interval (0, 1), but got {p}")
    elif not 0 <= p <= 1:
        raise ProbabilityRangeError(f"{name} must lie in the interval [0, 1], but got {p}")
    return p


def popcount(values, width):
    """
    Number of set bits in each of an array of integers.

    Parameters
    ----------
    values : `~numpy.ndarray`, dtype int
        Non-negative integers.
    width : int
        Number of meaningful low bits.

    Returns
    -------
    counts : `~numpy.ndarray`, dtype int
    """
    bits = (values[:, None] >> np.arange(width, dtype=values.dtype)) & 1
    return bits.sum(axis=1)
