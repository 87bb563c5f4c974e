# -*- coding: utf-8 -*-
"""
Convergence certificates
========================

Minorization constants of absorbing chains, the exponential convergence bound of conditioned laws toward the
quasi-stationary distribution, and the onset of monotonicity they imply.
"""
from dataclasses import dataclass, field
from itertools import islice
from math import ceil, isclose, log, log1p

import numpy as np

from ..linalg import as_dense
from ..utils import UnboundedOnsetError, check_probability
from .chain import compute_qsd, iconditioned

NEGLIGIBLE = 1e-300


@dataclass(frozen=True)
class MinorizationParams:
    """
    Constants of a minorization certificate.

    Parameters
    ----------
    n_nu : int
        Number of steps of the minorization, at least 1.
    c_nu : float
        Minorization constant: ``P^y(X_{n_nu} = x | alive) >= c_nu * nu(x)`` for every start ``y``.
    c_nu_prime : float
        Survival comparison constant: ``P^nu(alive at n) >= c_nu_prime * P^y(alive at n)``.
    c_alpha : float
        Lower bound on the quasi-stationary distribution.
    c_dagger : float
        Lower bound on the one-step absorption probability from ``n_dagger`` steps on.
    n_dagger : int, optional
    nu : `~numpy.ndarray` or None, optional
        Minorizing distribution, when materialized.
    """

    n_nu: int
    c_nu: float
    c_nu_prime: float
    c_alpha: float
    c_dagger: float
    n_dagger: int = 0
    nu: np.ndarray = field(default=None, compare=False)

    def __post_init__(self):
        if self.n_nu < 1:
            raise ValueError(f"n_nu must be at least 1, but got {self.n_nu}")
        if self.n_dagger < 0:
            raise ValueError(f"n_dagger must be nonnegative, but got {self.n_dagger}")
        for name in ("c_nu", "c_nu_prime"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in [0, 1], but got {getattr(self, name)}")
        for name in ("c_alpha", "c_dagger"):
            if not 0 < getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in (0, 1], but got {getattr(self, name)}")
        if self.nu is not None and not isclose(float(np.sum(self.nu)), 1, abs_tol=1e-12):
            raise ValueError("nu must be a probability distribution")

    @property
    def rate(self):
        """Contraction factor ``1 - c_nu * c_nu_prime`` per block of `n_nu` steps."""
        return 1 - self.c_nu * self.c_nu_prime

    def to_dict(self):
        return {
            "n_nu": int(self.n_nu),
            "c_nu": float(self.c_nu),
            "c_nu_prime": float(self.c_nu_prime),
            "c_alpha": float(self.c_alpha),
            "c_dagger": float(self.c_dagger),
            "n_dagger": int(self.n_dagger),
        }


def conditioned_kernel(chain, n):
    """
    Matrix of the ``n``-step laws conditioned on survival, one row per starting state.

    Rows whose survival probability underflows are left at zero. The result is dense.
    """
    power = np.linalg.matrix_power(as_dense(chain.Q), n)
    alive = power.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(alive > 0, power / alive, 0.0)


def minorization_constant(chain, nu, n_nu):
    """
    Largest constant ``c`` such that ``P^y(X_{n_nu} = x | alive) >= c * nu(x)`` for all ``y`` and ``x``.

    Parameters
    ----------
    chain : AbsorbingChain
    nu : array_like, shape (N,)
        Probability distribution over the transient states.
    n_nu : int
        Number of steps.

    Returns
    -------
    c_nu : float
        Minimum over ``y`` and over ``x`` in the support of `nu` of the conditioned probability divided by
        ``nu(x)``. A value of 0 flags a pair (`nu`, `n_nu`) that cannot certify anything.
    """
    nu = np.asarray(nu, dtype=float)
    if n_nu < 1:
        raise ValueError(f"n_nu must be at least 1, but got {n_nu}")
    support = nu > 0
    conditioned = conditioned_kernel(chain, n_nu)[:, support]
    conditioned[conditioned < NEGLIGIBLE] = 0
    return float(min(1.0, (conditioned / nu[support]).min()))


@dataclass(frozen=True)
class SurvivalComparison:
    """
    Survival comparison constant of a distribution against point masses.

    Attributes
    ----------
    finite : float
        ``min P^nu(alive at n) / P^y(alive at n)`` over starting states ``y`` and ``0 <= n <= horizon``.
    asymptotic : float
        Limit of the same ratio as ``n`` grows, ``min_y (nu @ eta) / eta[y]``.
    horizon : int
    constant : float
        Certified constant, the minimum of `finite` and `asymptotic`.
    caveat : str
        The comparison is only checked up to `horizon` and in the limit.
    """

    finite: float
    asymptotic: float
    horizon: int
    constant: float = field(init=False)
    caveat: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "constant", min(self.finite, self.asymptotic))
        object.__setattr__(
            self,
            "caveat",
            f"checked for n <= {self.horizon} and in the limit n -> infinity, not at every intermediate n",
        )

    def to_dict(self):
        return {
            "finite": self.finite,
            "asymptotic": self.asymptotic,
            "horizon": self.horizon,
            "c_nu_prime": self.constant,
            "caveat": self.caveat,
        }


def survival_comparison_constant(chain, nu, horizon, qsd=None):
    """
    Survival comparison constant ``c_nu_prime`` with ``P^nu(alive at n) >= c_nu_prime * P^y(alive at n)``.

    Parameters
    ----------
    chain : AbsorbingChain
    nu : array_like, shape (N,)
        Probability distribution over the transient states.
    horizon : int
        Largest number of steps checked exhaustively, at least 1.
    qsd : QsdResult or None, optional
        Quasi-stationary distribution of `chain`. Computed if not provided.

    Returns
    -------
    comparison : SurvivalComparison
    """
    if horizon < 1:
        raise ValueError(f"Horizon must be at least 1, but got {horizon}")
    nu = np.asarray(nu, dtype=float)
    if qsd is None:
        qsd = compute_qsd(chain)

    # Survival vectors are rescaled every step; the ratios are scale-free
    survival = np.ones(len(chain))
    finite = 1.0
    for _ in range(horizon):
        survival = chain.Q @ survival
        survival /= survival.max()
        finite = min(finite, float((nu @ survival) / survival.max()))
    asymptotic = float((nu @ qsd.eta) / qsd.eta.max())
    return SurvivalComparison(finite=finite, asymptotic=asymptotic, horizon=horizon)


@dataclass(frozen=True)
class ConvergenceReport:
    """
    Check of the exponential convergence of conditioned laws toward the quasi-stationary distribution.

    Attributes
    ----------
    passed : bool
        Whether ``|P^mu(X_n = .| alive) - alpha|_1 <= 2 (1 - c_nu c_nu_prime)^(n // n_nu)`` for every
        ``n <= horizon``.
    worst_margin : float
        Smallest difference between the bound and the measured distance.
    sharp_passed : bool
        Same check without the factor 2.
    sharp_margin : float
    distances : `~numpy.ndarray`
        Measured distances for ``n = 0, ..., horizon``.
    """

    passed: bool
    worst_margin: float
    sharp_passed: bool
    sharp_margin: float
    distances: np.ndarray = field(repr=False)

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {
            "passed": self.passed,
            "worst_margin": self.worst_margin,
            "sharp_passed": self.sharp_passed,
            "sharp_margin": self.sharp_margin,
        }


def verify_convergence_bound(chain, params, mu, horizon, qsd=None, atol=1e-12):
    """
    Check the exponential convergence bound of conditioned laws.

    Parameters
    ----------
    chain : AbsorbingChain
    params : MinorizationParams
    mu : array_like, shape (N,)
        Starting distribution.
    horizon : int
        Largest number of steps checked.
    qsd : QsdResult or None, optional
        Quasi-stationary distribution of `chain`. Computed if not provided.
    atol : float, optional
        Slack granted to the measured distances for the rounding error of `qsd`.

    Returns
    -------
    report : ConvergenceReport
    """
    if qsd is None:
        qsd = compute_qsd(chain)
    distances = np.array(
        [np.abs(dist - qsd.alpha).sum() for dist, _ in islice(iconditioned(chain, mu), horizon + 1)]
    )
    steps = np.arange(horizon + 1) // params.n_nu
    sharp = np.power(params.rate, steps)
    margins = 2 * sharp - distances
    sharp_margins = sharp - distances
    return ConvergenceReport(
        passed=bool(np.all(margins >= -atol)),
        worst_margin=float(margins.min()),
        sharp_passed=bool(np.all(sharp_margins >= -atol)),
        sharp_margin=float(sharp_margins.min()),
        distances=distances,
    )


def onset_bound(params):
    """
    Number of steps after which transition probabilities of the chain are non-increasing.

    Parameters
    ----------
    params : MinorizationParams

    Returns
    -------
    N : int
        ``max(n_dagger, n_nu * ceil(ln((2 - c_dagger) / (c_dagger c_alpha)) / -ln(1 - c_nu c_nu_prime)))``,
        where the ceiling term vanishes if ``c_nu c_nu_prime == 1``.

    Raises
    ------
    UnboundedOnsetError : if ``c_nu c_nu_prime == 0``.

    Examples
    --------
    >>> onset_bound(MinorizationParams(n_nu=2, c_nu=0.5, c_nu_prime=0.5, c_alpha=0.1, c_dagger=0.5))
    24
    """
    product = params.c_nu * params.c_nu_prime
    if product <= 0:
        raise UnboundedOnsetError("Minorization constants vanish; the onset of monotonicity cannot be bounded")
    if product >= 1:
        return int(params.n_dagger)
    blocks = log((2 - params.c_dagger) / (params.c_dagger * params.c_alpha)) / -log1p(-product)
    return int(max(params.n_dagger, params.n_nu * max(0, ceil(blocks))))


def qsd_floor(k, p):
    """Lower bound ``p^((k^2 + 2) / 2) (1 - p)^((k^2 + k) / 2)`` on the quasi-stationary distribution of C_k."""
    check_probability(p)
    return p ** ((k**2 + 2) / 2) * (1 - p) ** ((k**2 + k) / 2)


def qsd_floor_check(result, k, p, atol=1e-12):
    """
    Whether a quasi-stationary distribution of the pattern chain of C_k respects its uniform lower bound.

    Parameters
    ----------
    result : QsdResult
    k : int
    p : float
    atol : float, optional

    Returns
    -------
    holds : bool
    """
    return bool(np.min(result.alpha) >= qsd_floor(k, p) - atol)


def extinction_constant(chain):
    """Smallest one-step absorption probability over the transient states."""
    return float(chain.escape.min())
