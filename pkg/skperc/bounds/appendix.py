# -*- coding: utf-8 -*-
"""
Analytic inequalities
=====================

Grid checks of the elementary inequalities behind the onset bounds. Each inequality is turned into a margin
that is nonnegative wherever it holds, in the log domain whenever both sides can get small.
"""
import logging
from math import comb, e, log as ln

import numpy as np

from ..io.reports import CheckResult, VerificationReport
from .constants import c1, c1_prime, c2, c3, insulation_ratio

DEFAULT_GRID_DENSITY = 10_000
K_MAX = 1000
BINOMIAL_MAX = 200

log = logging.getLogger(__name__)


def _open_grid(start, stop, density, include_start=False, include_stop=False):
    """`density` points between `start` and `stop`, end points included on request."""
    grid = np.linspace(start, stop, density + 2)
    return grid[(0 if include_start else 1) : (None if include_stop else -1)]


def check_fourth_power(density=DEFAULT_GRID_DENSITY, atol=1e-12):
    """``(p + (1-p)p^3 + 2(1-p)^2 p^5)^4 >= p c1(p)^3`` for ``p`` in (0, 1), as a logarithmic margin."""
    p = _open_grid(0, 1, density)
    margins = 4 * np.log(c1_prime(p)) - np.log(p) - 3 * np.log(c1(p))
    return CheckResult.from_arrays("fourth power", margins, atol=atol, p=p)


def check_exponential(density=DEFAULT_GRID_DENSITY):
    """``(1 + 1/a)^(a + 1/2) > e`` for ``a`` log-spaced in ``[0.01, 100]``, as a logarithmic margin."""
    a = np.geomspace(0.01, 100, density)
    margins = (a + 0.5) * np.log1p(1 / a) - 1
    return CheckResult.from_arrays("exponential", margins, a=a)


def check_small_parameter_cap(k_max=K_MAX):
    """
    ``s_k >= 25k/3 >= 25`` and ``f(k) >= 0`` for ``3 <= k <= k_max``, where

    .. math::

        f(k) = \\left(s_k - \\frac{k^2 - k + 9}{2}\\right)\\ln s_k - (s_k - 2)\\ln(ek)
               + \\frac{k^2 + k}{2}\\ln\\left(1 - \\frac{1}{s_k}\\right)

    Returns
    -------
    checks : tuple of CheckResult
        Relative margin of the first inequality, and the value of ``f``.
    """
    k = np.arange(3, k_max + 1)
    s = k**2 * (1 + 2 / np.log(k))
    linear = CheckResult.from_arrays("s_k >= 25k/3 >= 25", np.minimum(3 * s / (25 * k), k / 3) - 1, k=k)

    f = (s - (k**2 - k + 9) / 2) * np.log(s) - (s - 2) * np.log(e * k) + (k**2 + k) / 2 * np.log1p(-1 / s)
    return linear, CheckResult.from_arrays("f(k) >= 0", f, k=k)


def check_large_parameter(k_max=K_MAX, density=DEFAULT_GRID_DENSITY, atol=1e-12):
    """
    For ``p`` in ``[1 - 1/(2k), 1)``, ``(1 - p^(2k)) / (p(1 - p)) <= 2k`` and ``p^(k^2 - k + 1) >= (1 - p)^k``.

    Returns
    -------
    checks : tuple of CheckResult
        Relative margin of the first inequality, logarithmic margin of the second.
    """
    geometric, power = list(), list()
    for k in range(3, k_max + 1):
        p = _open_grid(1 - 1 / (2 * k), 1, density, include_start=True)
        # expm1 keeps 1 - p^(2k) accurate near p = 1
        ratio = -np.expm1(2 * k * np.log(p)) / (p * (1 - p))
        geometric.append(CheckResult.from_arrays("geometric sum", 1 - ratio / (2 * k), atol=atol, k=k, p=p))
        margins = (k**2 - k + 1) * np.log(p) - k * np.log1p(-p)
        power.append(CheckResult.from_arrays("power", margins, atol=atol, k=k, p=p))
    return (
        CheckResult.combine("(1 - p^2k) / (p(1 - p)) <= 2k", geometric),
        CheckResult.combine("p^(k^2 - k + 1) >= (1 - p)^k", power),
    )


def _increasing(name, values, p, atol):
    """Non-strict increase between adjacent grid points, as differences."""
    return CheckResult.from_arrays(name, np.diff(values), atol=atol, p=p[1:])


def _decreasing(name, values, p, atol):
    return CheckResult.from_arrays(name, -np.diff(values), atol=atol, p=p[1:])


def check_monotonicity(density=DEFAULT_GRID_DENSITY, atol=1e-13):
    """
    Sign and monotonicity of the ``p``-dependent terms of the onset formulas.

    * ``-ln(p(1-p)) > 0``, decreasing on (0, 1/2] and increasing on [1/2, 1);
    * ``(1 - p(1-p)) / (1-p) > 1`` and increasing;
    * ``c1(p) / p > 0``, increasing on (0, 2/3] and decreasing on [2/3, 1);
    * ``c2(p) / p`` and ``(c2(p) - p) / p^2`` positive and increasing on (0, 1/3);
    * ``c3(p) > p`` and increasing.

    Returns
    -------
    checks : tuple of CheckResult
    """
    checks = list()
    whole = _open_grid(0, 1, density)
    left = _open_grid(0, 1 / 2, density, include_stop=True)
    right = _open_grid(1 / 2, 1, density, include_start=True)
    checks.append(CheckResult.from_arrays("-ln(p(1-p)) > 0", -np.log(whole * (1 - whole)), p=whole))
    checks.append(_decreasing("-ln(p(1-p)) decreasing", -np.log(left * (1 - left)), left, atol))
    checks.append(_increasing("-ln(p(1-p)) increasing", -np.log(right * (1 - right)), right, atol))

    checks.append(CheckResult.from_arrays("(1 - p(1-p)) / (1-p) > 1", 1 / insulation_ratio(whole) - 1, p=whole))
    checks.append(_increasing("(1 - p(1-p)) / (1-p) increasing", 1 / insulation_ratio(whole), whole, atol))

    left = _open_grid(0, 2 / 3, density, include_stop=True)
    right = _open_grid(2 / 3, 1, density, include_start=True)
    checks.append(CheckResult.from_arrays("c1(p) / p > 0", c1(whole) / whole, p=whole))
    checks.append(_increasing("c1(p) / p increasing", c1(left) / left, left, atol))
    checks.append(_decreasing("c1(p) / p decreasing", c1(right) / right, right, atol))

    third = _open_grid(0, 1 / 3, density)
    growth, excess = c2(third) / third, (c2(third) - third) / third**2
    checks.append(CheckResult.from_arrays("c2(p) / p > 0", growth, p=third))
    checks.append(_increasing("c2(p) / p increasing", growth, third, atol))
    checks.append(CheckResult.from_arrays("(c2(p) - p) / p^2 > 0", excess, p=third))
    checks.append(_increasing("(c2(p) - p) / p^2 increasing", excess, third, atol))

    checks.append(CheckResult.from_arrays("c3(p) > p", c3(whole) / whole - 1, p=whole))
    checks.append(_increasing("c3(p) increasing", c3(whole), whole, atol))
    return tuple(checks)


def check_binomial(m_max=BINOMIAL_MAX, atol=1e-12):
    """
    Lower bounds on binomial coefficients, for ``1 <= m, d <= m_max``:

    .. math::

        \\binom{m + d}{d} \\geq \\frac{1}{\\sqrt{8}} \\sqrt{\\frac{1}{d} + \\frac{1}{m}}
                               \\left(e \\sqrt{(m/d)^2 + m/d}\\right)^d
                          \\geq \\frac{1}{\\sqrt{8d}} \\left(e \\sqrt{(m/d)^2 + m/d}\\right)^d

    Binomial coefficients are exact integers; margins are logarithmic.

    Returns
    -------
    checks : tuple of CheckResult
    """
    m, d = np.meshgrid(np.arange(1, m_max + 1), np.arange(1, m_max + 1), indexing="ij")
    exact = np.array([[ln(comb(mi + di, di)) for di in range(1, m_max + 1)] for mi in range(1, m_max + 1)])
    power = d * (1 + 0.5 * np.log((m / d) ** 2 + m / d))
    sharp = -0.5 * np.log(8) + 0.5 * np.log(1 / d + 1 / m) + power
    loose = -0.5 * np.log(8 * d) + power
    return (
        CheckResult.from_arrays("binomial", exact - sharp, atol=atol, m=m, d=d),
        CheckResult.from_arrays("binomial, 1/sqrt(8d) form", exact - loose, atol=atol, m=m, d=d),
    )


def verify_appendix(grid_density=DEFAULT_GRID_DENSITY, k_max=K_MAX, m_max=BINOMIAL_MAX):
    """
    Check every analytic inequality used by the onset bounds on dense grids.

    Parameters
    ----------
    grid_density : int, optional
        Number of grid points for each range of ``p`` (or ``a``).
    k_max : int, optional
        Largest circumference checked.
    m_max : int, optional
        Largest ``m`` and ``d`` in the binomial bounds.

    Returns
    -------
    report : VerificationReport
        Failed checks list their violations with location; nothing is raised.
    """
    checks = [check_fourth_power(grid_density), check_exponential(grid_density)]
    checks.extend(check_small_parameter_cap(k_max))
    checks.extend(check_large_parameter(k_max, grid_density))
    checks.extend(check_monotonicity(grid_density))
    checks.extend(check_binomial(m_max))
    log.info(f"Checked {sum(c.n_points for c in checks)} grid points over {len(checks)} inequalities")
    return VerificationReport(
        title="analytic inequalities",
        checks=tuple(checks),
        parameters={"grid_density": grid_density, "k_max": k_max, "m_max": m_max},
    )
