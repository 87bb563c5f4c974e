# -*- coding: utf-8 -*-
"""
Linear algebra helpers
======================

Stationary laws of stochastic matrices, exact linear solves over the rationals and products that accept
dense arrays and sparse matrices alike. Matrices of :class:`fractions.Fraction` are represented as numpy
arrays of ``dtype=object``; floating-point transition matrices of the pattern chain are
:class:`scipy.sparse.csr_matrix`.
"""
from fractions import Fraction

import numpy as np
from scipy.linalg import solve
from scipy.sparse import csr_matrix, identity, issparse, vstack
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import spsolve


def is_exact(matrix):
    """Whether an array holds exact rationals, i.e. whether it is of object dtype."""
    if issparse(matrix):
        return False
    return np.asarray(matrix).dtype == object


def as_dense(matrix):
    """Dense array of a sparse or dense matrix."""
    return matrix.toarray() if issparse(matrix) else np.asarray(matrix)


def row_sums(matrix):
    """Sum of each row of a sparse or dense matrix, as a one-dimensional array."""
    return np.asarray(matrix.sum(axis=1)).ravel()


def left_multiply(vectors, matrix):
    """
    Product ``vectors @ matrix`` of row vectors with a sparse or dense matrix.

    Parameters
    ----------
    vectors : `~numpy.ndarray`, shape (N,) or (M, N)
    matrix : `~numpy.ndarray` or sparse matrix, shape (N, N)

    Returns
    -------
    out : `~numpy.ndarray`
        Same shape as `vectors`.

    Examples
    --------
    >>> left_multiply(np.array([1.0, 1.0]), csr_matrix([[0.5, 0.0], [0.25, 0.5]]))
    array([0.75, 0.5 ])
    """
    vectors = np.asarray(vectors)
    if issparse(matrix):
        return np.asarray(matrix.T @ vectors.T).T
    return vectors @ matrix


def left_power(vectors, matrix, n):
    """Product ``vectors @ matrix**n`` by repeated squaring of `matrix`."""
    if n < 0:
        raise ValueError(f"Power must be nonnegative, but got {n}")
    out = np.asarray(vectors)
    while n:
        if n & 1:
            out = left_multiply(out, matrix)
        n >>= 1
        if n:
            matrix = matrix @ matrix
    return out


def fraction_array(values):
    """Object array of Fractions from an array of integers, Fractions or floats."""
    values = np.asarray(values)
    out = np.empty(values.shape, dtype=object)
    out.flat = [_to_fraction(v) for v in values.flat]
    return out


def _to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    return Fraction(float(value))


def solve_exact(a, b):
    """
    Solve ``a @ x = b`` over the rationals by Gauss-Jordan elimination.

    Parameters
    ----------
    a : `~numpy.ndarray`, shape (N, N)
        Invertible matrix of integers or Fractions.
    b : `~numpy.ndarray`, shape (N,)

    Returns
    -------
    x : `~numpy.ndarray`, shape (N,), dtype object
        Exact solution.

    Raises
    ------
    ValueError : if `a` is singular.

    Examples
    --------
    >>> x = solve_exact(np.array([[2, 1], [1, 3]]), np.array([1, 2]))
    >>> [str(v) for v in x]
    ['1/5', '3/5']
    """
    a = fraction_array(a)
    b = fraction_array(b)
    n = a.shape[0]
    if a.shape != (n, n) or b.shape != (n,):
        raise ValueError(f"Incompatible shapes {a.shape} and {b.shape}")
    augmented = np.concatenate([a, b[:, None]], axis=1)

    for column in range(n):
        nonzero = [r for r in range(column, n) if augmented[r, column] != 0]
        if not nonzero:
            raise ValueError("Matrix is singular")
        pivot = nonzero[0]
        if pivot != column:
            augmented[[column, pivot]] = augmented[[pivot, column]]
        augmented[column] = augmented[column] / augmented[column, column]
        for row in range(n):
            if row != column and augmented[row, column] != 0:
                augmented[row] = augmented[row] - augmented[row, column] * augmented[column]

    return augmented[:, n]


def stationary_distribution(matrix):
    """
    Stationary law of a stochastic matrix with a single closed communicating class.

    The balance equations ``rho @ (P - I) = 0`` are solved with one of them replaced by the normalization
    ``sum(rho) = 1``. Object arrays of Fractions are solved exactly.

    Parameters
    ----------
    matrix : `~numpy.ndarray` or sparse matrix, shape (N, N)
        Row-stochastic matrix. Sparse matrices are solved by a sparse LU factorization.

    Returns
    -------
    rho : `~numpy.ndarray`, shape (N,)

    Examples
    --------
    >>> rho = stationary_distribution(np.array([[0.5, 0.5], [0.25, 0.75]]))
    >>> np.allclose(rho, [1/3, 2/3])
    True
    """
    n = matrix.shape[0]
    if is_exact(matrix):
        system = (matrix - fraction_array(np.eye(n, dtype=int))).T.copy()
        system[-1, :] = Fraction(1)
        rhs = fraction_array(np.zeros(n, dtype=int))
        rhs[-1] = Fraction(1)
        return solve_exact(system, rhs)

    if issparse(matrix):
        system = (csr_matrix(matrix, dtype=float) - identity(n, format="csr")).T.tocsr()
        system = vstack([system[:-1], csr_matrix(np.ones((1, n)))], format="csc")
        rhs = np.zeros(n)
        rhs[-1] = 1.0
        rho = np.clip(spsolve(system, rhs), 0, None)
        return rho / rho.sum()

    system = (np.asarray(matrix, dtype=float) - np.eye(n)).T
    system[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    rho = solve(system, rhs)
    rho = np.clip(rho, 0, None)
    return rho / rho.sum()


def is_communicating(matrix):
    """Whether the directed graph of the positive entries of a square matrix is strongly connected."""
    support = csr_matrix(matrix if issparse(matrix) else np.asarray(matrix, dtype=float), dtype=float, copy=True)
    support.eliminate_zeros()
    n_components, _ = connected_components(support, directed=True, connection="strong")
    return n_components == 1

