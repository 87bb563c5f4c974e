# -*- coding: utf-8 -*-

import numpy as np
import pytest
from scipy.sparse import csr_matrix

from skperc import (
    AbsorbingChain,
    ConvergenceError,
    ExtinctionError,
    StructuralError,
    compute_qsd,
    conditioned_distribution,
    cylinder_chain,
    dense_qsd,
    total_variation,
)


@pytest.mark.parametrize(
    "Q",
    [
        [[0.5, -0.1], [0.2, 0.5]],  # negative entry
        [[0.9, 0.2], [0.2, 0.5]],  # row sum above 1
        [[0.5, 0.5], [0.5, 0.5]],  # no absorption
        [[0.5, 0.0], [0.0, 0.5]],  # not communicating
        [[0.5]],  # single state
    ],
)
def test_absorbing_chain_structure(Q):
    """Test that invalid absorbing chains are rejected"""
    with pytest.raises(StructuralError):
        AbsorbingChain(Q)


def test_absorbing_chain_escape():
    """Test the one-step absorption probabilities"""
    chain = AbsorbingChain([[0.5, 0.2], [0.1, 0.5]])
    assert np.allclose(chain.escape, [0.3, 0.4])
    assert np.allclose(chain.survival(0), 1)


@pytest.mark.parametrize("a, b", [(0.5, 0.2), (0.1, 0.1), (0.3, 0.6)])
def test_symmetric_qsd(a, b):
    """Test that symmetric chains have a uniform quasi-stationary distribution"""
    result = compute_qsd(AbsorbingChain([[a, b], [b, a]]))
    assert np.allclose(result.alpha, [0.5, 0.5])
    assert result.eigenvalue == pytest.approx(a + b, abs=1e-13)


def test_qsd_periodic_chain_does_not_converge():
    """Test that power iteration reports a lack of convergence"""
    with pytest.raises(ConvergenceError):
        compute_qsd(AbsorbingChain([[0.0, 0.9], [0.5, 0.0]]), max_iterations=100)


def test_qsd_invalid_tolerance():
    """Test that the tolerance must be positive"""
    with pytest.raises(ValueError):
        compute_qsd(AbsorbingChain([[0.5, 0.2], [0.2, 0.5]]), tolerance=0)


@pytest.mark.parametrize("k", [3, 4, 5])
@pytest.mark.parametrize("p", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_percolation_qsd_residuals(k, p):
    """Test the residuals of the quasi-stationary distribution of pattern chains"""
    result = compute_qsd(cylinder_chain(k).absorbing_chain(p))
    assert result.residual_l1 <= 1e-12
    assert result.residual_inf <= 1e-12
    assert result.alpha.sum() == pytest.approx(1, abs=1e-14)
    assert np.all(result.alpha >= 0)
    assert 0 < result.eigenvalue < 1


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_power_iteration_against_dense(p):
    """Test that power iteration agrees with a dense eigensolve"""
    chain = cylinder_chain(3).absorbing_chain(p)
    iterated, dense = compute_qsd(chain), dense_qsd(chain)
    assert np.allclose(iterated.alpha, dense.alpha, atol=1e-10)
    assert np.allclose(iterated.eta, dense.eta, atol=1e-10)
    assert iterated.eigenvalue == pytest.approx(dense.eigenvalue, abs=1e-10)


def test_survival_identity():
    """Test that survival from the quasi-stationary distribution decays geometrically"""
    chain = cylinder_chain(3).absorbing_chain(0.5)
    result = compute_qsd(chain)
    mass = result.alpha.copy()
    for n in range(1, 51):
        mass = chain.Q.T @ mass
        assert mass.sum() == pytest.approx(result.eigenvalue**n, abs=1e-10)


def test_conditioned_distribution_trivial():
    """Test that zero steps return the starting distribution"""
    chain = cylinder_chain(3).absorbing_chain(0.5)
    mu = np.zeros(len(chain))
    mu[3] = 1
    distribution, log_survival = conditioned_distribution(chain, mu, 0)
    assert np.array_equal(distribution, mu)
    assert log_survival == 0


def test_conditioned_distribution_quasi_stationary():
    """Test that the quasi-stationary distribution is invariant under conditioning"""
    chain = cylinder_chain(3).absorbing_chain(0.5)
    result = compute_qsd(chain)
    distribution, log_survival = conditioned_distribution(chain, result.alpha, 100)
    assert np.allclose(distribution, result.alpha, atol=1e-12)
    assert log_survival == pytest.approx(100 * np.log(result.eigenvalue), abs=1e-10)


def test_conditioned_distribution_converges():
    """Test that conditioned laws from the fully connected pattern converge to the quasi-stationary distribution"""
    pattern_chain = cylinder_chain(3)
    chain = pattern_chain.absorbing_chain(0.5)
    mu = np.zeros(len(chain))
    mu[pattern_chain.position(pattern_chain.space.x_star)] = 1

    distribution, log_survival = conditioned_distribution(chain, mu, 10**6)
    assert total_variation(distribution, compute_qsd(chain).alpha) / 2 <= 1e-10
    assert np.isfinite(log_survival)


def test_survival_asymptotics():
    """Test that survival from a point mass is asymptotically proportional to the eigenvalue power"""
    chain = cylinder_chain(4).absorbing_chain(0.5)
    result = compute_qsd(chain)
    for y in range(len(chain)):
        mu = np.zeros(len(chain))
        mu[y] = 1
        _, early = conditioned_distribution(chain, mu, 1000)
        _, late = conditioned_distribution(chain, mu, 2000)
        early -= 1000 * np.log(result.eigenvalue)
        late -= 2000 * np.log(result.eigenvalue)
        assert late == pytest.approx(early, abs=1e-9)
        assert late == pytest.approx(np.log(result.eta[y]), abs=1e-9)


def test_extinction():
    """Test that a starting distribution without mass is rejected"""
    chain = AbsorbingChain([[0.5, 0.2], [0.1, 0.5]])
    with pytest.raises(ExtinctionError):
        conditioned_distribution(chain, [0, 0], 3)


def test_conditioned_distribution_negative_steps():
    """Test that the number of steps must be nonnegative"""
    with pytest.raises(ValueError):
        conditioned_distribution(AbsorbingChain([[0.5, 0.2], [0.1, 0.5]]), [1, 0], -1)


def test_sparse_chain():
    """Test that sparse and dense transition matrices give the same chain"""
    Q = [[0.5, 0.2, 0.0], [0.0, 0.4, 0.3], [0.3, 0.0, 0.6]]
    dense, sparse = AbsorbingChain(Q), AbsorbingChain(csr_matrix(Q))
    assert np.allclose(sparse.escape, dense.escape)
    assert np.allclose(sparse.survival(7), dense.survival(7))

    expected, result = compute_qsd(dense), compute_qsd(sparse)
    assert np.allclose(result.alpha, expected.alpha, atol=1e-12)
    assert result.eigenvalue == pytest.approx(expected.eigenvalue, abs=1e-12)
    assert np.allclose(dense_qsd(sparse).alpha, expected.alpha, atol=1e-10)

    law, log_survival = conditioned_distribution(sparse, [1.0, 0.0, 0.0], 5)
    expected_law, expected_log = conditioned_distribution(dense, [1.0, 0.0, 0.0], 5)
    assert np.allclose(law, expected_law)
    assert log_survival == pytest.approx(expected_log)


def test_sparse_chain_structure():
    """Test that sparse matrices are validated like dense ones"""
    with pytest.raises(StructuralError):
        AbsorbingChain(csr_matrix([[0.5, -0.1], [0.2, 0.5]]))
    with pytest.raises(StructuralError):
        AbsorbingChain(csr_matrix([[0.5, 0.0], [0.0, 0.5]]))
