# -*- coding: utf-8 -*-
"""
Series bounds from walk counts
==============================

Upper bounds on expected cluster sizes obtained by summing walk counts against path probabilities: the
expected number of vertices of layer 0 connected to the origin through the upper half-plane, which controls
whether the expected number of infected vertices per layer can grow, and the expected number of vertices one
layer up reached through the layers below.
"""
from dataclasses import dataclass, field

import numpy as np

from ..bounds import c2
from ..io.reports import CheckResult, VerificationReport
from ..utils import DivergentSeriesError, ProbabilityRangeError, check_probability
from .census import REFERENCE, WalkCensus
from .minimal_paths import p_prime
from .recursions import A_PRIME_LENGTHS, GROWTH_RATE, TAIL_START, a_prime, tail_coefficient
from .small import first_passage_counts

THEOREM_P = 0.35
TABULATED_LENGTHS = range(6, 23)
C2_COEFFICIENTS = (0, 1, 2, 2, 2, 4, 8)


def w0_terms(p, census=None):
    """
    Terms of the upper bound on the expected number of vertices of layer 0 connected to the origin through
    the upper half-plane.

    .. math::

        1 + \\sum_{l \\geq 1} 2p^l + \\sum_{l=3}^{5} p'_l + \\sum_{l=6}^{22} (a_l - 2) p^l (1 - p^2)^2
        + \\sum_{l=23}^{41} a'_l p^l (1 - p^2)^2 + \\sum_{l \\geq 42} b_{10} b_{12} d_{20} 2.76^{l - 42} p^l (1 - p^2)^2

    Parameters
    ----------
    p : float
        Percolation parameter, below 1/2.76.
    census : WalkCensus or None, optional
        Defaults to the pinned tables. Needs ``a`` up to length 22, ``b`` up to 12 and ``d`` up to 20.

    Returns
    -------
    terms : dict
        Keys ``"origin"``, ``"straight"``, ``"short"``, ``"tabulated"``, ``"split"`` and ``"tail"``.

    Raises
    ------
    DivergentSeriesError : if `p` is at least 1/2.76.
    """
    check_probability(p, open_interval=True)
    if p * GROWTH_RATE >= 1:
        raise DivergentSeriesError(f"The geometric tail diverges for p >= 1/2.76, but got p = {p}")
    census = census or WalkCensus.reference()
    if len(census.a) <= max(TABULATED_LENGTHS):
        raise ValueError(f"Table a must extend to length {max(TABULATED_LENGTHS)}")

    p = float(p)
    ratio = float(GROWTH_RATE)
    damping = (1 - p**2) ** 2
    return {
        "origin": 1.0,
        "straight": 2 * p / (1 - p),
        "short": sum(float(p_prime(l, p)) for l in (3, 4, 5)),
        "tabulated": sum((census.a[l] - 2) * p**l for l in TABULATED_LENGTHS) * damping,
        "split": sum(a_prime(l, census) * p**l for l in A_PRIME_LENGTHS) * damping,
        "tail": tail_coefficient(census) * p**TAIL_START / (1 - ratio * p) * damping,
    }


def w0_bound(p, census=None):
    """
    Upper bound on the expected number of vertices of layer 0 connected to the origin through the upper
    half-plane. See :func:`w0_terms` for the parameters.

    Examples
    --------
    >>> 0.35 * w0_bound(0.35) <= 1
    True
    """
    return sum(w0_terms(p, census).values())


@dataclass(frozen=True)
class SeriesBound:
    """
    Value of :func:`w0_bound` at one percolation parameter.

    Attributes
    ----------
    p : float
    value : float
    terms : dict
    """

    p: float
    value: float
    terms: dict = field(default_factory=dict, repr=False)

    @property
    def product(self):
        """:math:`p` times the bound; at most 1 if the expected number of infected vertices cannot grow."""
        return self.p * self.value

    @property
    def passed(self):
        return self.product <= 1

    def to_dict(self):
        return {"p": self.p, "bound": self.value, "product": self.product, "passed": self.passed, **self.terms}


def theorem3(p=THEOREM_P, census=None):
    """
    Bound certifying that the expected number of infected vertices per layer of Z x Z does not increase.

    Parameters
    ----------
    p : float, optional
    census : WalkCensus or None, optional
        Defaults to the pinned tables.

    Returns
    -------
    bound : SeriesBound
        ``bound.passed`` is True when :math:`p \\, w_0(p) \\leq 1`.
    """
    terms = w0_terms(p, census)
    return SeriesBound(p=float(p), value=sum(terms.values()), terms=terms)


def c2_series(p, counts=None):
    """
    Sum of first-passage walk counts against path probabilities,
    :math:`\\sum_{l \\leq 6} n_l p^l + \\sum_{l \\geq 7} 64 \\cdot 3^{l - 7} p^l`.

    Parameters
    ----------
    p : float
        Percolation parameter, below 1/3.
    counts : sequence of ints or None, optional
        First-passage counts ``n_0, ..., n_6``. Defaults to the pinned counts.

    Returns
    -------
    value : float
    """
    check_probability(p, open_interval=True)
    if p >= 1 / 3:
        raise ProbabilityRangeError(f"The first-passage series converges for p < 1/3, but got {p}")
    counts = REFERENCE["n"] if counts is None else counts
    head = sum(n * p**l for l, n in enumerate(counts[:7]))
    return head + 64 * p**7 / (1 - 3 * p)


def c2_consistency(p, max_length=15, samples=0, horizon=5, k=None, seed=0, processes=1):
    """
    Check that the growth constant :math:`c_2(p)` is the first-passage series of the measured walk counts.

    Parameters
    ----------
    p : float
        Percolation parameter, below 1/3.
    max_length : int, optional
        Largest walk length enumerated.
    samples : int, optional
        Number of Monte Carlo samples of the number of vertices of layer ``n`` reached from ``(0, 0)``, which
        must not exceed :math:`p c_2(p)^{n-1}`. No simulation if 0.
    horizon : int, optional
        Largest layer simulated.
    k : int or None, optional
        Circumference of the simulated cylinder. Defaults to ``4 * horizon + 9``.
    seed : int, optional
    processes : int, optional

    Returns
    -------
    report : VerificationReport
    """
    check_probability(p, open_interval=True)
    if p >= 1 / 3:
        raise ProbabilityRangeError(f"The first-passage series converges for p < 1/3, but got {p}")
    counts = first_passage_counts(max_length)

    coefficients = CheckResult.from_arrays(
        "n_l = coefficients of c2",
        [-abs(n - c) for n, c in zip(counts[1:7], C2_COEFFICIENTS[1:])],
        l=np.arange(1, 7),
    )
    lengths = np.arange(7, max_length + 1)
    geometric = CheckResult.from_arrays(
        "n_l <= 64 3^(l-7)",
        [64 * 3 ** int(l - 7) - counts[l] for l in lengths],
        l=lengths,
    )
    series = CheckResult.from_arrays(
        "series = c2(p)", -abs(c2_series(p, counts) - c2(p)), atol=1e-12, p=float(p)
    )
    checks = [coefficients, geometric, series]

    if samples:
        from ..montecarlo import SimConfig, estimate

        k = 4 * horizon + 9 if k is None else k
        layers = np.arange(1, horizon + 1)
        means, errors = zip(
            *(
                estimate(
                    SimConfig(k=k, p=p, horizon=int(n), samples=samples, seed=seed),
                    "wbar",
                    n=int(n),
                    processes=processes,
                )
                for n in layers
            )
        )
        bounds = p * c2(p) ** (layers - 1)
        checks.append(
            CheckResult.from_arrays(
                "E(Wbar_n) <= p c2(p)^(n-1)", bounds + 3 * np.array(errors) - np.array(means), n=layers
            )
        )

    return VerificationReport(
        title="first-passage series",
        checks=tuple(checks),
        parameters={"p": float(p), "max_length": max_length, "samples": samples, "seed": seed},
    )
