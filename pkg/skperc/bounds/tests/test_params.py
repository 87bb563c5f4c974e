# -*- coding: utf-8 -*-

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from skperc import (
    CapacityError,
    N3,
    ProbabilityRangeError,
    constants,
    cylinder_chain,
    extinction_constant,
    intermediate_params,
    minorization_constant,
    nu_p_distribution,
    onset_bound,
    rotate,
)


@pytest.mark.parametrize("k, p", list(product([3, 4, 5], [0.1, 0.3, 0.5, 0.7, 0.9])))
def test_connected_pattern_onset(k, p):
    """Test that the certificate of the fully connected pattern leads to at most the closed-form onset"""
    params = intermediate_params(k, p, variant="c")
    assert params.n_nu == 3
    assert params.c_nu_prime == 1
    assert params.n_dagger == 0
    assert onset_bound(params) <= N3(k, p)


@pytest.mark.parametrize("p", [0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
def test_connected_pattern_minorization(p):
    """Test that the measured minorization by the fully connected pattern dominates its closed form"""
    params = intermediate_params(3, p, variant="c")
    chain = cylinder_chain(3).absorbing_chain(p)
    assert minorization_constant(chain, params.nu, params.n_nu) >= params.c_nu


@pytest.mark.parametrize("p", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_extinction_constant_bound(p):
    """Test that the measured one-step extinction probability dominates (1 - p)^k"""
    params = intermediate_params(3, p)
    chain = cylinder_chain(3).absorbing_chain(p)
    assert extinction_constant(chain) >= params.c_dagger - 1e-15


@pytest.mark.parametrize("variant, p", [("a", 0.1), ("a", 0.3), ("b", 0.3), ("b", 0.5)])
def test_layer_law_params(variant, p):
    """Test the certificate constants of the law of a percolated layer"""
    params = intermediate_params(4, p, variant=variant)
    assert params.n_nu == constants(4, p).m_prime + 4
    assert params.c_nu_prime == pytest.approx(1 / 4)
    assert 0 < params.c_nu <= 1
    assert params.nu.sum() == pytest.approx(1)
    assert params.c_dagger == pytest.approx((1 - p) ** 4)


def test_variants_share_constants():
    """Test that both layer-law variants give the same constants where both apply"""
    assert intermediate_params(3, 0.2, variant="a") == intermediate_params(3, 0.2, variant="b")


def test_params_materialize():
    """Test that the minorizing law is only materialized on request for large cycles"""
    assert intermediate_params(7, 0.5).nu is None
    assert intermediate_params(3, 0.5, materialize=False).nu is None
    assert intermediate_params(4, 0.5).nu is not None


def test_params_range():
    """Test the ranges of the certificate variants"""
    with pytest.raises(ProbabilityRangeError):
        intermediate_params(3, 0.4, variant="a")
    with pytest.raises(ProbabilityRangeError):
        intermediate_params(3, 0.6, variant="b")
    with pytest.raises(ProbabilityRangeError):
        intermediate_params(3, 1.0)
    with pytest.raises(ValueError):
        intermediate_params(3, 0.5, variant="d")


@pytest.mark.parametrize("k", [3, 4, 5])
@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_nu_p_normalized(k, p):
    """Test that the law of a percolated layer is a distribution on attainable infected patterns"""
    nu = nu_p_distribution(k, p)
    assert nu.shape == (len(cylinder_chain(k)),)
    assert nu.sum() == pytest.approx(1, abs=1e-12)
    assert np.all(nu >= 0)


def test_nu_p_connected():
    """Test the mass of the fully connected pattern on the 3-cycle"""
    chain = cylinder_chain(3)
    nu = nu_p_distribution(3, Fraction(1, 2), exact=True)
    assert sum(nu) == 1
    assert nu[chain.position(chain.space.x_star)] == Fraction(1, 2)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_nu_p_rotation_invariant(k):
    """Test that the law of a percolated layer does not depend on the labelling of the cycle"""
    chain = cylinder_chain(k)
    nu = nu_p_distribution(k, Fraction(2, 5), exact=True)
    for x in chain.states:
        assert nu[chain.position(rotate(x, 1))] == nu[chain.position(x)]


def test_nu_p_exact_agrees():
    """Test that exact and float laws of a percolated layer agree"""
    exact = nu_p_distribution(4, Fraction(3, 10), exact=True)
    assert np.allclose(exact.astype(float), nu_p_distribution(4, 0.3))


def test_nu_p_capacity():
    """Test that the law of a percolated layer is only enumerated for small cycles"""
    with pytest.raises(CapacityError):
        nu_p_distribution(17, 0.5)
