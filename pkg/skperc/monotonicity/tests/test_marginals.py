# -*- coding: utf-8 -*-

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from skperc import (
    STATIONARY_INITIAL,
    LayerConfig,
    Pattern,
    compute_qsd,
    connection_probability,
    cylinder_chain,
    expected_infected,
    initial_distribution,
    layer_law,
    marginal,
    marginal_curve,
    successor,
)

GRID = np.round(np.arange(0.05, 0.36, 0.05), 2)


def test_initial_distribution():
    """Test that the law of the layer-0 pattern is supported on patterns infecting the origin"""
    law = initial_distribution(3, 0.3)
    assert sum(law.values()) == pytest.approx(1, abs=1e-12)
    assert all(0 in x.infected for x, mass in law.items() if mass > 0)


def test_initial_distribution_exact():
    """Test that the exact law of the layer-0 pattern sums to one exactly"""
    law = initial_distribution(4, Fraction(1, 2), exact=True)
    assert sum(law.values()) == 1
    assert all(isinstance(mass, Fraction) for mass in law.values())


def test_marginal_zero_layers():
    """Test that layer 0 holds the starting pattern"""
    y = Pattern.from_string("{{*,0,1},{2}}")
    assert marginal(3, 0.4, y, y, 0) == 1
    assert marginal(3, 0.4, y, "{{*,0,1,2}}", 0) == 0


def test_marginal_two_layers_brute_force():
    """Test two-layer marginals against an enumeration of every bond configuration of two layers"""
    y = Pattern.from_string("{{*,0},{1},{2}}")
    first = {mask: successor(y, LayerConfig(mask, 6)) for mask in range(64)}
    counts = dict()
    for a, b in product(range(64), repeat=2):
        x = successor(first[a], LayerConfig(b, 6))
        counts[x] = counts.get(x, 0) + 1

    for x, count in counts.items():
        assert marginal(3, Fraction(1, 2), y, x, 2, exact=True) == Fraction(count, 4096)
        assert marginal(3, 0.5, y, x, 2) == pytest.approx(count / 4096, abs=1e-12)


def test_marginal_exact_and_float_agree():
    """Test that exact and floating-point marginals agree"""
    chain = cylinder_chain(4)
    for x in chain.states[::3]:
        exact = marginal(4, Fraction(3, 10), STATIONARY_INITIAL, x, 5, exact=True)
        assert float(exact) == pytest.approx(marginal(4, 0.3, STATIONARY_INITIAL, x, 5), abs=1e-12)


def test_marginal_exact_limit():
    """Test that exact marginals are limited in depth"""
    with pytest.raises(ValueError):
        marginal(3, 0.5, STATIONARY_INITIAL, "{{*,0,1,2}}", 17, exact=True)


def test_marginal_unknown_pattern():
    """Test that patterns outside the state space are rejected"""
    with pytest.raises(ValueError):
        marginal(3, 0.5, STATIONARY_INITIAL, Pattern.from_string("{{*,0},{1},{2},{3}}"), 2)


def test_marginal_complete():
    """Test that the marginals of every pattern, infected or not, add up to one"""
    chain = cylinder_chain(3)
    total = sum(marginal(3, 0.4, STATIONARY_INITIAL, x, 3) for x in chain.space)
    assert total == pytest.approx(1, abs=1e-12)


def test_marginal_large_layer_ratio():
    """Test that far-away marginals decay at the rate of the dominant eigenvalue"""
    chain = cylinder_chain(3)
    eigenvalue = compute_qsd(chain.absorbing_chain(0.5)).eigenvalue
    y = chain.space.x_star
    for x in chain.states:
        late = marginal(3, 0.5, y, x, 10**6, log=True)
        early = marginal(3, 0.5, y, x, 10**6 - 1, log=True)
        assert eigenvalue - 1e-6 < np.exp(late - early) < eigenvalue + 1e-6


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_survival_non_increasing(p):
    """Test that the probability of reaching layer n does not increase with n"""
    y = Pattern.from_string("{{*,0,1,2,3}}")
    masses = [layer_law(4, p, n, start=y).sum() for n in range(20)]
    assert np.all(np.diff(masses) <= 1e-15)


def test_marginal_curve():
    """Test that marginal curves agree with individual layer laws"""
    curve = marginal_curve(3, 0.3, horizon=6)
    assert np.all(np.diff(curve.log_survival) <= 0)
    assert np.allclose(curve.conditional.sum(axis=1), 1, atol=1e-12)
    for n in range(7):
        assert np.allclose(curve.probabilities(n), layer_law(3, 0.3, n), atol=1e-14)
    assert len(list(curve.rows())) == 7 * 10


def test_connection_probability_origin():
    """Test that the origin is connected to itself"""
    assert connection_probability(3, 0.3, 0, 0) == pytest.approx(1, abs=1e-12)
    assert connection_probability(4, Fraction(1, 3), 0, 0, exact=True) == 1


def test_connection_probability_exact_one_layer():
    """Test one exact connection probability against an enumeration over the law of the layer-0 pattern"""
    p = Fraction(1, 2)
    expected = Fraction(0)
    for x, mass in initial_distribution(3, p, exact=True).items():
        hits = sum(1 in successor(x, LayerConfig(mask, 6)).infected for mask in range(64))
        expected += mass * Fraction(hits, 64)
    assert connection_probability(3, p, 1, 1, exact=True) == expected


@pytest.mark.parametrize("r", [1, 2])
def test_connection_probability_rotation(r):
    """Test that connection probabilities are covariant under rotations of the cylinder"""
    for v, n in product(range(4), range(4)):
        first = connection_probability(4, 0.4, v, n, origin=0)
        second = connection_probability(4, 0.4, (v + r) % 4, n, origin=r)
        assert first == pytest.approx(second, abs=1e-13)


def test_expected_infected_sum_of_connections():
    """Test that the expected number of infected vertices is the sum of connection probabilities"""
    for n in range(5):
        total = sum(connection_probability(4, 0.35, v, n) for v in range(4))
        assert expected_infected(4, 0.35, n) == pytest.approx(total, abs=1e-12)


def test_expected_infected_origin_layer():
    """Test that the origin is always infected at layer 0"""
    assert expected_infected(3, 0.2, 0) >= 1


def test_expected_infected_dense():
    """Test that almost every vertex is infected when almost every edge is open"""
    for n in range(4):
        assert expected_infected(5, 0.999, n) == pytest.approx(5, abs=0.05)


@pytest.mark.parametrize("k", [3, 4, 5])
@pytest.mark.parametrize("p", GRID)
def test_expected_infected_non_increasing(k, p):
    """Test that the expected number of infected vertices does not increase for small p"""
    values = [expected_infected(k, p, n) for n in range(51)]
    assert np.all(np.diff(values) <= 1e-15)
