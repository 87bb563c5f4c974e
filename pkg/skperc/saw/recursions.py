# -*- coding: utf-8 -*-
"""
Recursive walk bounds
=====================

Splitting a walk into consecutive pieces bounds long walk counts by products of shorter ones:

.. math::

    a_{l_1 + l_2 + l_3} \\leq b_{l_1} d_{l_2} b_{l_3}, \\qquad d_{l_1 + l_2} \\leq \\frac{3}{4} c_{l_1} d_{l_2},

for :math:`l_1 \\geq 1` and :math:`l_2, l_3 \\geq 0`. The counts :math:`a_l` beyond the census are bounded by
:func:`a_prime` up to length 41, and by a geometric tail of ratio 2.76 from length 42 on.
"""
from fractions import Fraction

import numpy as np

from ..io.reports import CheckResult, VerificationReport
from .census import WalkCensus

GROWTH_RATE = Fraction(69, 25)
A_PRIME_LENGTHS = range(23, 42)
TAIL_START = 42


def _slack(value, bound):
    """Relative slack ``1 - value / bound``, exact in sign."""
    return float(1 - Fraction(value) / Fraction(bound))


def _require(table, name, length):
    if len(table) <= length:
        raise ValueError(f"Table {name} must extend to length {length}, but stops at {len(table) - 1}")


def a_prime_split(l):
    """
    Lengths ``(l1, l2, l3)`` of the split used to bound walks of length `l` between 23 and 41.

    Examples
    --------
    >>> a_prime_split(23), a_prime_split(41)
    ((2, 19, 2), (10, 19, 12))
    """
    if l not in A_PRIME_LENGTHS:
        raise ValueError(f"Split bounds are defined for lengths 23 to 41, but got {l}")
    k, r = divmod(l, 4)
    return {
        0: (2 * (k - 5), 20, 2 * (k - 5)),
        1: (2 * (k - 5), 19, 2 * (k - 4)),
        2: (2 * (k - 5), 20, 2 * (k - 4)),
        3: (2 * (k - 4), 19, 2 * (k - 4)),
    }[r]


def a_prime(l, census=None):
    """
    Upper bound on the number of half-plane walks of length `l` ending in layer 0, for :math:`23 \\leq l \\leq 41`.

    Parameters
    ----------
    l : int
    census : WalkCensus or None, optional
        Defaults to the pinned tables.

    Returns
    -------
    bound : int
    """
    census = census or WalkCensus.reference()
    l1, l2, l3 = a_prime_split(l)
    _require(census.b, "b", max(l1, l3))
    _require(census.d, "d", l2)
    return census.b[l1] * census.d[l2] * census.b[l3]


def tail_coefficient(census=None):
    """Coefficient :math:`b_{10} b_{12} d_{20}` of the geometric bound on walks of length 42 and more."""
    census = census or WalkCensus.reference()
    _require(census.b, "b", 12)
    _require(census.d, "d", 20)
    return census.b[10] * census.b[12] * census.d[20]


def _check(name, entries):
    """Check from ``(value, bound, location)`` triples."""
    entries = list(entries)
    margins = np.array([_slack(value, bound) for value, bound, _ in entries])
    violations = [dict(where, margin=float(m)) for (_, _, where), m in zip(entries, margins) if m < 0]
    return CheckResult(
        name=name,
        passed=not violations,
        worst_margin=float(margins.min()) if len(entries) else np.inf,
        n_points=len(entries),
        violations=violations,
    )


def _a_splits(census):
    a, b, d = census.a, census.b, census.d
    for total in range(1, len(a)):
        for l1 in range(1, min(total, len(b) - 1) + 1):
            for l2 in range(0, min(total - l1, len(d) - 1) + 1):
                l3 = total - l1 - l2
                if l3 < len(b):
                    yield a[total], b[l1] * d[l2] * b[l3], {"l1": l1, "l2": l2, "l3": l3}


def _d_splits(census):
    c, d = census.c, census.d
    for total in range(1, len(d)):
        for l1 in range(1, min(total, len(c) - 1) + 1):
            l2 = total - l1
            yield d[total], Fraction(3, 4) * c[l1] * d[l2], {"l1": l1, "l2": l2}


def _tail_splits(census):
    b, coefficient = census.b, tail_coefficient(census)
    for r in range(TAIL_START, TAIL_START + 21):
        for l1 in range(10, 22):
            l3 = r - 20 - l1
            if 12 <= l3 <= 21 and max(l1, l3) < len(b):
                bound = coefficient * GROWTH_RATE ** (r - TAIL_START)
                yield b[l1] * b[l3] * census.d[20], bound, {"l": r, "l1": l1, "l3": l3}


def verify_recursions(census=None):
    """
    Check the recursive bounds on walk counts over every split within the tables of a census.

    Parameters
    ----------
    census : WalkCensus or None, optional
        Defaults to the pinned tables. Ratio and tail checks need ``b`` up to length 21, ``c`` up to 21
        and ``d`` up to 20.

    Returns
    -------
    report : VerificationReport
        Margins are relative slacks ``1 - value / bound``.
    """
    census = census or WalkCensus.reference()
    _require(census.b, "b", 21)
    _require(census.c, "c", 21)
    _require(census.d, "d", 20)

    b, c = census.b, census.c
    ratios = ((b[n + 1], GROWTH_RATE * b[n], {"n": n}) for n in range(2, 21))
    known = (
        (census.a[l], a_prime(l, census), {"l": l}) for l in A_PRIME_LENGTHS if l < len(census.a)
    )

    checks = (
        _check("a_(l1+l2+l3) <= b_l1 d_l2 b_l3", _a_splits(census)),
        _check("d_(l1+l2) <= 3/4 c_l1 d_l2", _d_splits(census)),
        _check("b_(n+1) <= 2.76 b_n", ratios),
        _check("3/4 c_21 <= 2.76^21", [(Fraction(3, 4) * c[21], GROWTH_RATE**21, {"l": 21})]),
        _check("b_l1 b_l3 d_20 <= b_10 b_12 d_20 2.76^(l-42)", _tail_splits(census)),
        _check("a_l <= a'_l", known),
    )
    return VerificationReport(title="walk recursions", checks=checks, parameters=census.lengths)
