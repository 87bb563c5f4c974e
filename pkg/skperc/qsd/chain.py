# -*- coding: utf-8 -*-
"""
Quasi-stationary distributions
==============================

Dominant eigenpairs of substochastic matrices by power iteration, and conditioned laws of absorbing chains.
"""
import logging
from dataclasses import dataclass, field
from itertools import islice

import numpy as np
from npstreams import last
from scipy.linalg import eig
from scipy.sparse import csr_matrix, issparse

from ..linalg import as_dense, is_communicating, left_multiply, row_sums
from ..utils import ConvergenceError, ExtinctionError, StructuralError

DEFAULT_TOLERANCE = 1e-14
DEFAULT_MAX_ITERATIONS = 10**6

log = logging.getLogger(__name__)


class AbsorbingChain:
    """
    Finite Markov chain absorbed outside a set of transient states.

    Parameters
    ----------
    Q : array_like or sparse matrix, shape (N, N)
        Substochastic transition matrix between transient states. The deficit of each row is the
        one-step absorption probability. Sparse matrices are kept sparse.
    labels : sequence of str or None, optional
        Names of the transient states.

    Raises
    ------
    StructuralError : if `Q` has negative entries, rows summing to more than one, no absorption at all,
        a single state, or transient states that do not communicate.
    """

    def __init__(self, Q, labels=None):
        Q = csr_matrix(Q, dtype=float, copy=True) if issparse(Q) else np.array(Q, dtype=float)
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise StructuralError(f"Expected a square matrix, but got shape {Q.shape}")
        if Q.shape[0] < 2:
            raise StructuralError("An absorbing chain requires at least two transient states")
        if np.any((Q.data if issparse(Q) else Q) < 0):
            raise StructuralError("Transition matrix has negative entries")

        rows = row_sums(Q)
        if np.any(rows > 1 + 1e-12):
            raise StructuralError(f"Row sums must not exceed 1, but the largest is {rows.max()}")
        if not np.any(rows < 1):
            raise StructuralError("No transient state leads to absorption")
        if not is_communicating(Q):
            raise StructuralError("Transient states do not form a single communicating class")

        self.Q = Q
        self.labels = list(labels) if labels is not None else [str(i) for i in range(Q.shape[0])]
        if len(self.labels) != len(self):
            raise ValueError(f"Expected {len(self)} labels, but got {len(self.labels)}")

    def __len__(self):
        return self.Q.shape[0]

    def __repr__(self):
        return f"<AbsorbingChain with {len(self)} transient states>"

    @property
    def escape(self):
        """One-step absorption probability from each transient state."""
        return np.clip(1 - row_sums(self.Q), 0, None)

    def survival(self, n):
        """Probability of surviving ``n`` steps from each transient state."""
        survival = np.ones(len(self))
        for _ in range(n):
            survival = self.Q @ survival
        return survival


@dataclass(frozen=True)
class QsdResult:
    """
    Quasi-stationary distribution of an absorbing chain.

    Attributes
    ----------
    alpha : `~numpy.ndarray`
        Left Perron vector, a probability vector.
    eigenvalue : float
        Dominant eigenvalue, the per-step survival probability under `alpha`.
    eta : `~numpy.ndarray`
        Right Perron vector, normalized so that ``alpha @ eta == 1``. ``eta[y]`` is the constant ``c_y`` in
        the survival asymptotics ``P^y(alive at n) ~ c_y * eigenvalue**n``.
    residual_l1 : float
        ``|alpha @ Q - eigenvalue * alpha|_1``.
    residual_inf : float
        ``|Q @ eta - eigenvalue * eta|_inf``.
    iterations : int
        Number of sweeps of power iteration; 0 for a dense eigensolve.
    """

    alpha: np.ndarray
    eigenvalue: float
    eta: np.ndarray
    residual_l1: float
    residual_inf: float
    iterations: int = field(default=0)

    @property
    def survival_constants(self):
        return self.eta

    def to_dict(self):
        return {
            "lambda": float(self.eigenvalue),
            "alpha": [float(a) for a in self.alpha],
            "eta": [float(e) for e in self.eta],
            "residual": float(self.residual_l1),
            "residual_right": float(self.residual_inf),
            "iterations": int(self.iterations),
        }


def _residuals(Q, alpha, eta, eigenvalue):
    left = np.abs(left_multiply(alpha, Q) - eigenvalue * alpha).sum()
    right = np.abs(Q @ eta - eigenvalue * eta).max()
    return left, right


def compute_qsd(chain, tolerance=DEFAULT_TOLERANCE, max_iterations=DEFAULT_MAX_ITERATIONS):
    """
    Quasi-stationary distribution by power iteration.

    Left and right iterates start uniform and are renormalized every sweep, in L1 norm on the left and in
    maximum norm on the right. The eigenvalue estimate is the surviving mass of the left iterate. Tolerances
    below the rounding floor of a matrix-vector product, of order ``N`` machine epsilons, are raised to it. Only
    matrix-vector products are used, so sparse chains are never densified.

    Parameters
    ----------
    chain : AbsorbingChain
    tolerance : float, optional
        Residual below which both iterations stop.
    max_iterations : int, optional

    Returns
    -------
    result : QsdResult

    Raises
    ------
    ConvergenceError : if the residuals are not met within `max_iterations` sweeps.

    Examples
    --------
    >>> result = compute_qsd(AbsorbingChain([[0.5, 0.2], [0.2, 0.5]]))
    >>> np.allclose(result.alpha, [0.5, 0.5]), round(result.eigenvalue, 12)
    (True, 0.7)
    """
    if tolerance <= 0:
        raise ValueError(f"Tolerance must be positive, but got {tolerance}")
    Q = chain.Q
    n = len(chain)
    tolerance = max(tolerance, 8 * n * np.finfo(float).eps)

    alpha = np.full(n, 1 / n)
    eta = np.ones(n)
    left = right = np.inf
    for iteration in range(1, max_iterations + 1):
        image = left_multiply(alpha, Q)
        eigenvalue = image.sum()
        if left > tolerance:
            left = np.abs(image - eigenvalue * alpha).sum()
            alpha = image / eigenvalue
        if right > tolerance:
            right_image = Q @ eta
            right = np.abs(right_image - eigenvalue * eta).max() / eta.max()
            eta = right_image / right_image.max()
        if left <= tolerance and right <= tolerance:
            break
    else:
        raise ConvergenceError(
            f"Power iteration did not converge in {max_iterations} iterations; "
            f"last residuals are {left:.3e} (left) and {right:.3e} (right)"
        )

    eta = eta / (alpha @ eta)
    eigenvalue = left_multiply(alpha, Q).sum()
    residual_l1, residual_inf = _residuals(Q, alpha, eta, eigenvalue)
    log.debug(f"Power iteration converged in {iteration} iterations with eigenvalue {eigenvalue}")
    return QsdResult(alpha, float(eigenvalue), eta, float(residual_l1), float(residual_inf), iteration)


def dense_qsd(chain):
    """
    Quasi-stationary distribution from a full dense eigendecomposition.

    Parameters
    ----------
    chain : AbsorbingChain

    Returns
    -------
    result : QsdResult
    """
    values, left, right = eig(as_dense(chain.Q), left=True, right=True)
    dominant = np.argmax(values.real)
    alpha = np.abs(np.real(left[:, dominant]))
    alpha /= alpha.sum()
    eta = np.abs(np.real(right[:, dominant]))
    eta /= alpha @ eta
    eigenvalue = float(values[dominant].real)
    residual_l1, residual_inf = _residuals(chain.Q, alpha, eta, eigenvalue)
    return QsdResult(alpha, eigenvalue, eta, float(residual_l1), float(residual_inf), 0)


def iconditioned(chain, mu):
    """
    Generator of the conditioned laws of an absorbing chain.

    Parameters
    ----------
    chain : AbsorbingChain
    mu : array_like, shape (N,)
        Starting distribution over the transient states.

    Yields
    ------
    distribution : `~numpy.ndarray`
        Law at step n = 0, 1, 2, ... conditioned on survival.
    log_survival : float
        Logarithm of the probability of surviving n steps.

    Raises
    ------
    ExtinctionError : if no mass survives.
    """
    distribution = np.array(mu, dtype=float)
    if distribution.shape != (len(chain),) or np.any(distribution < 0):
        raise ValueError(f"Expected a nonnegative vector of length {len(chain)}")
    total = distribution.sum()
    if total <= 0:
        raise ExtinctionError("Starting distribution has no mass")
    distribution = distribution / total
    log_survival = 0.0

    yield distribution, log_survival
    while True:
        distribution = left_multiply(distribution, chain.Q)
        alive = distribution.sum()
        if alive <= 0:
            raise ExtinctionError("Every path of the chain has been absorbed")
        log_survival += float(np.log(alive))
        distribution = distribution / alive
        yield distribution, log_survival


def conditioned_distribution(chain, mu, n):
    """
    Law of an absorbing chain after ``n`` steps, conditioned on survival.

    The surviving mass is renormalized every step and its logarithm accumulated, which keeps the result
    representable at very large ``n``.

    Parameters
    ----------
    chain : AbsorbingChain
    mu : array_like, shape (N,)
        Starting distribution over the transient states.
    n : int
        Number of steps.

    Returns
    -------
    distribution : `~numpy.ndarray`
    log_survival : float
        Logarithm of the probability of surviving ``n`` steps from `mu`.

    Raises
    ------
    ExtinctionError : if no mass survives.
    """
    if n < 0:
        raise ValueError(f"Number of steps must be nonnegative, but got {n}")
    return last(islice(iconditioned(chain, mu), n + 1))


def total_variation(first, second):
    """Sum of absolute differences between two distributions, i.e. twice their total variation distance."""
    return float(np.abs(np.asarray(first) - np.asarray(second)).sum())
