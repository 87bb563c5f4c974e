# -*- coding: utf-8 -*-
"""
Certificate parameters
======================

Closed-form minorization constants of the pattern chain of C_k, for the two candidate minorizing laws: the
fully connected pattern, and the law of a percolated layer with the infection placed on a uniform vertex.
"""
from fractions import Fraction
from math import sqrt

import numpy as np

from ..patterns import canonicalize, cylinder_chain
from ..patterns.space import STAR
from ..qsd import MinorizationParams, qsd_floor
from ..unionfind import UnionFind
from ..utils import CapacityError, ProbabilityRangeError, as_fraction, check_probability
from .constants import c1, c2, constants, insulation_ratio

VARIANTS = ("a", "b", "c")
MATERIALIZE_MAX = 6
NU_MAX_CYCLE_LENGTH = 16


def _cycle_partition(k, mask):
    """Connected components of the cycle C_k whose edge ``(v, v + 1)`` is open iff bit ``v`` of `mask` is set."""
    forest = UnionFind(range(k))
    for v in range(k):
        if (mask >> v) & 1:
            forest.union(v, (v + 1) % k)
    return forest.groups()


def nu_p_distribution(k, p, origin=0, exact=False):
    """
    Law of the pattern of a percolated layer of C_k, with the marker joining the component of a uniformly
    chosen vertex.

    Parameters
    ----------
    k : int
        Circumference.
    p : float or Fraction
        Percolation parameter in (0, 1).
    origin : int, optional
        Origin of the pattern chain whose state order is used.
    exact : bool, optional
        If True, probabilities are exact Fractions.

    Returns
    -------
    nu : `~numpy.ndarray`
        Probability of each attainable infected pattern, in the order of ``cylinder_chain(k, origin).states``.

    Raises
    ------
    CapacityError : if `k` exceeds ``NU_MAX_CYCLE_LENGTH``.
    """
    if k > NU_MAX_CYCLE_LENGTH:
        raise CapacityError(f"Enumerating 2^{k} layer configurations exceeds the cap of k = {NU_MAX_CYCLE_LENGTH}")
    check_probability(p, open_interval=True)
    p = as_fraction(p) if exact else float(p)
    chain = cylinder_chain(k, origin=origin)

    nu = np.array([Fraction(0)] * len(chain), dtype=object) if exact else np.zeros(len(chain))
    for mask in range(2**k):
        n_open = bin(mask).count("1")
        weight = p**n_open * (1 - p) ** (k - n_open) / k
        components = _cycle_partition(k, mask)
        for v in range(k):
            blocks = [block + [STAR] if v in block else block for block in components]
            nu[chain.position(canonicalize(blocks, k=k))] += weight
    return nu


def _nu_star(chain):
    nu = np.zeros(len(chain))
    nu[chain.position(chain.space.x_star)] = 1
    return nu


def intermediate_params(k, p, variant="c", materialize=None):
    """
    Closed-form certificate constants of the pattern chain of C_k.

    Variant ``"c"`` minorizes by the fully connected pattern in 3 steps. Variants ``"a"`` (``p < 1/3``) and
    ``"b"`` (``p <= 1/2``) minorize by the law of a percolated layer in ``ceil(m) + 4`` steps; they share
    their constants and differ in the onset formula they lead to.

    Parameters
    ----------
    k : int
        Circumference, at least 3.
    p : float
        Percolation parameter in (0, 1).
    variant : {"a", "b", "c"}, optional
    materialize : bool or None, optional
        Whether to attach the minorizing law as an explicit distribution over attainable patterns. By
        default, only for ``k <= 6``.

    Returns
    -------
    params : MinorizationParams

    Raises
    ------
    ProbabilityRangeError : if `p` is outside the range of the variant.
    """
    if variant not in VARIANTS:
        raise ValueError(f"Variant must be one of {VARIANTS}, but got {variant!r}")
    check_probability(p, open_interval=True)
    if variant == "a" and not p < 1 / 3:
        raise ProbabilityRangeError(f"Variant 'a' holds for p < 1/3, but got {p}")
    if variant == "b" and not p <= 1 / 2:
        raise ProbabilityRangeError(f"Variant 'b' holds for p <= 1/2, but got {p}")
    if materialize is None:
        materialize = k <= MATERIALIZE_MAX

    p = float(p)
    c_alpha = qsd_floor(k, p)
    c_dagger = (1 - p) ** k

    if variant == "c":
        nu = _nu_star(cylinder_chain(k)) if materialize else None
        return MinorizationParams(
            n_nu=3, c_nu=p**4 * c1(p) ** (k - 2), c_nu_prime=1.0, c_alpha=c_alpha, c_dagger=c_dagger, nu=nu
        )

    const = constants(k, p)
    m_prime = const.m_prime
    numerator = p ** (m_prime + 4) * insulation_ratio(p) ** min(m_prime, k / 2) * (1 - p) * c1(1 - p) ** (k - 2)
    survival = min(1.0, k * p * c2(p) ** (m_prime + 3))
    c_nu = min(1.0, numerator / (2 * sqrt(k) * survival))
    nu = nu_p_distribution(k, p) if materialize else None
    return MinorizationParams(
        n_nu=m_prime + 4, c_nu=c_nu, c_nu_prime=1 / k, c_alpha=c_alpha, c_dagger=c_dagger, nu=nu
    )
