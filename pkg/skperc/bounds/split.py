# -*- coding: utf-8 -*-
"""
Uniform onset bound
===================

The interval (0, 1) of percolation parameters is split into seven pieces at
``1/(3k^2) < 0.1 < 0.315 < 4/9 < 2/3 < 1 - 1/k^2``. On each piece one of the onset formulas is dominated
by an explicit function of ``k``, itself dominated by ``N_main(k)``. Every domination is checked in the log
domain on a dense grid of each piece.
"""
import logging
from math import ceil

import numpy as np
from npstreams import pmap

from ..io.reports import CheckResult, VerificationReport
from .constants import s_k
from .formulas import K_CAP, N_main, _log_n0, _log_n1, _log_n2, _log_n3, _log_n4, applicable_formulas

DEFAULT_DENSITY = 1000

log = logging.getLogger(__name__)

# (check name, piece, log of the onset formula, log of its majorant)
DOMINATIONS = (
    ("N0 <= 9 k^2", 0, lambda k, p: np.full_like(p, _log_n0(k)), lambda k: np.log(9) + 2 * np.log(k)),
    ("N1 <= 15 k^8 1.53^k", 1, _log_n1, lambda k: np.log(15) + 8 * np.log(k) + k * np.log(1.53)),
    ("N1 <= 526 k^(11/2) 1.95^k", 2, _log_n1, lambda k: np.log(526) + 5.5 * np.log(k) + k * np.log(1.95)),
    ("N2 <= 2119 k^(9/2) 1.95^k", 3, _log_n2, lambda k: np.log(2119) + 4.5 * np.log(k) + k * np.log(1.95)),
    ("N3 <= 209 k^2 1.95^k", 4, _log_n3, lambda k: np.log(209) + 2 * np.log(k) + k * np.log(1.95)),
    ("N3 <= 16 k^(5/2) 1.5^k", 5, _log_n3, lambda k: np.log(16) + 2.5 * np.log(k) + k * np.log(1.5)),
    ("N4 <= 7 k^2", 6, _log_n4, lambda k: np.log(7) + 2 * np.log(k)),
)


def split_points(k):
    """End points of the seven pieces of (0, 1) at circumference `k`."""
    return (0.0, 1 / (3 * k**2), 0.1, 0.315, 4 / 9, 2 / 3, 1 - 1 / k**2, 1.0)


def piece_grid(k, piece, density=DEFAULT_DENSITY):
    """
    Grid of `density` points on one piece, end points included except 0 and 1.

    Parameters
    ----------
    k : int
    piece : int
        Index of the piece, from 0 to 6.
    density : int, optional

    Returns
    -------
    grid : `~numpy.ndarray`
    """
    points = split_points(k)
    start, stop = points[piece], points[piece + 1]
    if piece == 0:
        return np.linspace(start, stop, density + 1)[1:]
    if piece == len(points) - 2:
        return np.linspace(start, stop, density + 1)[:-1]
    return np.linspace(start, stop, density)


def _split_margins(k, density):
    """Log-domain margins of every domination at circumference `k`."""
    log_main = N_main(k, log=True)
    margins = dict()
    for name, piece, log_formula, log_majorant in DOMINATIONS:
        grid = piece_grid(k, piece, density)
        margins[name] = (grid, log_majorant(k) - log_formula(k, grid), log_main - log_majorant(k))
    return k, margins


def verify_uniform_split(k_range, density=DEFAULT_DENSITY, processes=1, atol=1e-12):
    """
    Check that one of the onset formulas lies below ``N_main(k)`` at every percolation parameter.

    Parameters
    ----------
    k_range : iterable of int
        Circumferences, between 3 and ``K_CAP``.
    density : int, optional
        Number of grid points per piece.
    processes : int, optional
        Number of worker processes, each handling whole circumferences.
    atol : float, optional
        Tolerance on the logarithmic margins.

    Returns
    -------
    report : VerificationReport
        One check per domination, with margins ``ln(majorant) - ln(formula)`` over ``(k, p)``, one check
        ``"majorants <= N_main"`` over ``(k, domination)``, and one check ``"N0 applies"`` that the first
        piece lies in the range of ``N0``.
    """
    ks = sorted(set(int(k) for k in k_range))
    if not ks or ks[0] < 3 or ks[-1] > K_CAP:
        raise ValueError(f"Circumferences must lie between 3 and {K_CAP}, but got {k_range}")

    results = dict(pmap(_split_margins, ks, kwargs=dict(density=density), processes=processes, ntotal=len(ks)))
    log.info(f"Uniform split evaluated for {len(ks)} circumferences at {density} points per piece")

    checks = list()
    for name, *_ in DOMINATIONS:
        grids = [results[k][name][0] for k in ks]
        checks.append(
            CheckResult.from_arrays(
                name,
                np.concatenate([results[k][name][1] for k in ks]),
                atol=atol,
                k=np.concatenate([np.full(len(g), k) for k, g in zip(ks, grids)]),
                p=np.concatenate(grids),
            )
        )

    names = np.array([name for name, *_ in DOMINATIONS])
    majorant_margins = np.array([[results[k][name][2] for name in names] for k in ks])
    checks.append(
        CheckResult.from_arrays(
            "majorants <= N_main", majorant_margins, atol=atol, k=np.array(ks)[:, None], domination=names[None, :]
        )
    )

    ks_array = np.array(ks)
    range_margins = np.log(3 * ks_array**2) - np.log([s_k(k) for k in ks])
    checks.append(CheckResult.from_arrays("N0 applies", range_margins, atol=atol, k=ks_array))

    return VerificationReport(
        title="uniform split", checks=tuple(checks), parameters={"k_min": ks[0], "k_max": ks[-1], "density": density}
    )


BOUND_COLUMNS = ("k", "p", "N0", "N1", "N2", "N3", "N4", "N_main", "applicable_min")


def bound_table(k_values, p_values):
    """
    Table of every onset formula over a grid of circumferences and percolation parameters.

    Parameters
    ----------
    k_values : iterable of int
        Circumferences, between 3 and ``K_CAP``.
    p_values : iterable of float
        Percolation parameters in (0, 1).

    Returns
    -------
    rows : list of dict
        Keyed by ``k, p, N0, N1, N2, N3, N4, N_main, applicable_min``. Formulas outside their range are None;
        ``applicable_min`` is the smallest applicable formula, rounded up and capped by ``N_main``.
    """
    rows = list()
    for k in k_values:
        main = N_main(k)
        for p in p_values:
            values = applicable_formulas(k, p)
            row = {"k": k, "p": float(p)}
            row.update({name: values.get(name) for name in BOUND_COLUMNS[2:7]})
            row["N_main"] = main
            row["applicable_min"] = min(main, ceil(min(values.values())))
            rows.append(row)
    return rows
