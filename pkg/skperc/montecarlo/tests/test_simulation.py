# -*- coding: utf-8 -*-

from math import sqrt

import pytest

from skperc import (
    DEFAULT_DEPTH,
    STATIONARY_INITIAL,
    CapacityError,
    LayerConfig,
    LayerGraph,
    Pattern,
    ProbabilityRangeError,
    SimConfig,
    connection_probability,
    enumerate_patterns,
    estimate,
    expected_infected,
    initial_distribution,
    marginal,
    sample_chain_path,
    successor,
    theorem3,
)


def test_simconfig_validation():
    """Test that invalid simulation parameters are rejected"""
    with pytest.raises(ProbabilityRangeError):
        SimConfig(k=3, p=1.5)
    with pytest.raises(ValueError):
        SimConfig(k=3, p=0.5, samples=0)
    with pytest.raises(ValueError):
        SimConfig(k=3, p=0.5, depth=0)
    with pytest.raises(ValueError):
        SimConfig(k=3, p=0.5, origin=3)


def test_simconfig_to_dict():
    """Test that simulation parameters serialize with their seed"""
    config = SimConfig(k=4, p=0.25, samples=10, seed=3)
    assert config.to_dict()["seed"] == 3
    assert config.to_dict()["depth"] == 200


def test_estimate_unknown_functional():
    """Test that unknown functionals are rejected"""
    with pytest.raises(ValueError):
        estimate(SimConfig(k=3, p=0.5, samples=10), "volume")
    with pytest.raises(ValueError):
        estimate(SimConfig(k=3, p=0.5, samples=10), "marginal", n=1)


def test_estimate_closed_bonds():
    """Test that no vertex is infected beyond layer 0 when every bond is closed"""
    config = SimConfig(k=4, p=0, depth=5, samples=50)
    assert tuple(estimate(config, "W", n=0)) == (1, 0)
    assert tuple(estimate(config, "W", n=3)) == (0, 0)
    assert estimate(config, "marginal", n=2, x="{{*},{0},{1},{2},{3}}").mean == 1


def test_estimate_open_bonds():
    """Test that every vertex is infected when every bond is open"""
    config = SimConfig(k=5, p=1, depth=5, samples=50)
    assert tuple(estimate(config, "W", n=4)) == (5, 0)
    assert estimate(config, "marginal", n=1, x="{{*,0,1,2,3,4}}").mean == 1
    assert estimate(config, "wtilde0").mean == 5
    assert estimate(config, "wbar", n=3).mean == 5


def test_estimate_origin_connection():
    """Test that the origin is always connected to itself"""
    mean, std_error = estimate(SimConfig(k=4, p=0.4, depth=10, samples=200), "connection", n=0)
    assert (mean, std_error) == (1, 0)


def test_estimate_single_sample():
    """Test that a single sample has no standard error"""
    assert estimate(SimConfig(k=3, p=0.5, depth=3, samples=1), "W", n=2).std_error == 0


def assert_agrees(result, exact, bernoulli=False):
    """Assert that a simulated mean is within four standard errors of an exact value"""
    sigma = result.std_error
    # frequencies of events never sampled have no spread of their own
    if bernoulli:
        sigma = max(sigma, sqrt(max(exact * (1 - exact), 0) / result.samples))
    assert abs(result.mean - exact) <= 4 * sigma


@pytest.mark.parametrize("x", ["{{*,0},{1},{2}}", "{{*,0,1},{2}}", "{{*,0,1,2}}", "{{*},{0},{1},{2}}"])
def test_estimate_marginal(x):
    """Test that simulated marginals agree with the exact chain within four standard errors"""
    config = SimConfig(k=3, p=0.3, depth=50, samples=20_000, seed=11)
    exact = marginal(3, 0.3, STATIONARY_INITIAL, x, 2)
    assert_agrees(estimate(config, "marginal", n=2, x=x), exact, bernoulli=True)


def test_estimate_connection_and_infected():
    """Test simulated connection probabilities and infected counts against the exact chain"""
    config = SimConfig(k=4, p=0.4, depth=50, samples=20_000, seed=5)
    exact = connection_probability(4, 0.4, 1, 2)
    assert_agrees(estimate(config, "connection", n=2, v=1), exact, bernoulli=True)
    assert_agrees(estimate(config, "W", n=3), expected_infected(4, 0.4, 3))


@pytest.mark.parametrize("p", [0.25, 0.6])
def test_estimate_initial_distribution(p):
    """Test that the layer-0 pattern after the default warm-up follows the stationary initial law"""
    config = SimConfig(k=3, p=p, samples=10_000, seed=17)
    assert config.depth == DEFAULT_DEPTH
    law = initial_distribution(3, p)
    assert sum(law.values()) == pytest.approx(1)
    for x, probability in law.items():
        assert marginal(3, p, STATIONARY_INITIAL, x, 0) == pytest.approx(probability)
        assert_agrees(estimate(config, "marginal", n=0, x=x), probability, bernoulli=True)


@pytest.mark.deep
@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_estimate_against_chain_deep(p):
    """Test every marginal, connection probability and infected count of C_3 up to layer 5 with 10^5 samples"""
    config = SimConfig(k=3, p=p, samples=10**5, seed=23)
    patterns = [str(x) for x in enumerate_patterns(3)]
    for n in range(6):
        for x in patterns:
            exact = marginal(3, p, STATIONARY_INITIAL, x, n)
            assert_agrees(estimate(config, "marginal", n=n, x=x, processes=4), exact, bernoulli=True)
        for v in range(3):
            exact = connection_probability(3, p, v, n)
            assert_agrees(estimate(config, "connection", n=n, v=v, processes=4), exact, bernoulli=True)
        assert_agrees(estimate(config, "W", n=n, processes=4), expected_infected(3, p, n))


def test_estimate_processes():
    """Test that estimates do not depend on the number of worker processes"""
    config = SimConfig(k=4, p=0.35, depth=20, samples=2500, seed=42)
    assert estimate(config, "W", n=3) == estimate(config, "W", n=3, processes=2)
    assert estimate(config, "wbar", n=2) == estimate(config, "wbar", n=2, processes=2)


def test_estimate_seed():
    """Test that the seed determines the estimate"""
    config = SimConfig(k=4, p=0.35, depth=20, samples=500, seed=1)
    assert estimate(config, "W", n=2) == estimate(config, "W", n=2)


def test_estimate_mask_capacity():
    """Test that chain functionals refuse circumferences whose bonds do not fit in a mask"""
    with pytest.raises(CapacityError):
        estimate(SimConfig(k=40, p=0.3, depth=2, samples=10), "W", n=1)


def test_wbar_decreasing():
    """Test that vertices reached through more layers become rarer"""
    means = [estimate(SimConfig(k=25, p=0.3, samples=5000, seed=2), "wbar", n=n).mean for n in (1, 2, 3, 4)]
    assert means[0] == pytest.approx(0.3, abs=0.03)
    assert all(a >= b for a, b in zip(means, means[1:]))


def test_wtilde0_below_bound():
    """Test that the simulated cluster of the origin in layer 0 stays below its series bound"""
    config = SimConfig(k=61, p=0.35, depth=30, samples=2000, seed=3, origin=30, strip=True)
    mean, std_error = estimate(config, "wtilde0")
    assert mean - 3 * std_error <= theorem3(0.35).value


@pytest.mark.deep
def test_wtilde0_below_bound_deep():
    """Test the cluster of the origin in layer 0 against its series bound with a million samples"""
    mean, std_error = estimate(
        SimConfig(k=121, p=0.35, depth=60, samples=10**6, seed=3, origin=60, strip=True), "wtilde0", processes=4
    )
    assert mean - 3 * std_error <= theorem3(0.35).value


def test_sample_chain_path():
    """Test that chain paths follow the successor map of their layer configurations"""
    graph = LayerGraph.cycle(3)
    layers = [LayerConfig(mask, graph.n_edges) for mask in (0b000111, 0b110001, 0b000000)]
    start = Pattern.from_string("{{*,0},{1},{2}}")
    path = sample_chain_path(SimConfig(k=3, p=0.5, horizon=3), initial=start, layers=layers)
    assert path[0] == start
    for bottom, layer, top in zip(path, layers, path[1:]):
        assert top == successor(bottom, layer, graph)
    assert not path[-1].is_infected


def test_sample_chain_path_random():
    """Test that sampled chain paths start with the origin infected"""
    path = sample_chain_path(SimConfig(k=4, p=0.5, depth=10, horizon=6, seed=9))
    assert len(path) == 7
    assert 0 in path[0].infected
    assert all(isinstance(x, Pattern) for x in path)
    infected = [x.is_infected for x in path]
    assert infected == sorted(infected, reverse=True)


def test_sample_chain_path_wrong_layers():
    """Test that the number of layer configurations must match the horizon"""
    with pytest.raises(ValueError):
        sample_chain_path(SimConfig(k=3, p=0.5, horizon=2), layers=[LayerConfig(0, 6)])


def test_sample_chain_path_cylinder_realization():
    """Test a fixed realization of three layers of bonds on C_5"""
    graph = LayerGraph.cycle(5)
    layers = [
        LayerConfig.from_edges(graph, vertical=[0, 3], horizontal=[(4, 0)]),
        LayerConfig.from_edges(graph, vertical=[0, 2], horizontal=[(0, 1), (1, 2), (3, 4)]),
        LayerConfig.from_edges(graph, vertical=[4], horizontal=[(4, 0), (1, 2)]),
    ]
    start = Pattern.from_string("{{*,0,1},{2,4},{3}}")
    path = sample_chain_path(SimConfig(k=5, p=0.5, horizon=3), initial=start, layers=layers)
    assert [str(x) for x in path] == [
        "{{*,0,1},{2,4},{3}}",
        "{{*,0,4},{1},{2},{3}}",
        "{{*,0,1,2},{3,4}}",
        "{{*},{0,4},{1,2},{3}}",
    ]


def test_strip_has_no_wrap():
    """Test that strips do not join the two ends of a layer"""
    config = SimConfig(k=4, p=1, depth=2, samples=10, strip=True)
    assert config.graph.n_edges == 7
    assert estimate(config, "W", n=2).mean == 4
