# -*- coding: utf-8 -*-

from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import eig
from scipy.sparse import issparse
from scipy.special import comb

from skperc import (
    MAX_CYCLE_LENGTH,
    LayerConfig,
    LayerGraph,
    Pattern,
    ProbabilityRangeError,
    TransitionKernel,
    bell_number,
    build_kernel,
    canonical_rows,
    connectivity_kernel,
    enumerate_patterns,
    evaluate,
    rotate,
    successor,
    sweep_layer,
)

np.random.seed(23)


def test_successor_figure():
    """Test one layer of the worked five-vertex example"""
    graph = LayerGraph.cycle(5)
    y = Pattern.from_string("{{*,0,1,2},{3,4}}")
    config = LayerConfig.from_edges(graph, vertical=[4], horizontal=[(4, 0), (1, 2)])
    assert str(successor(y, config)) == "{{*},{0,4},{1,2},{3}}"


@pytest.mark.parametrize("k", [3, 4, 5])
def test_successor_all_closed(k):
    """Test that closing every edge gives the fully disconnected pattern"""
    space = enumerate_patterns(k)
    config = LayerConfig(0, 2 * k)
    for y in space:
        assert successor(y, config) == space.x_dagger


@pytest.mark.parametrize("k", [3, 4, 5])
def test_successor_all_open(k):
    """Test that opening every edge gives the fully connected pattern from infected patterns"""
    space = enumerate_patterns(k)
    config = LayerConfig(2 ** (2 * k) - 1, 2 * k)
    for i in space.star:
        assert successor(space[i], config) == space.x_star


def test_successor_general_graph():
    """Test the successor on a line graph, where the bit layout follows the edge list"""
    graph = LayerGraph.line(3)
    y = Pattern.from_string("{{*,0},{1},{2}}")
    config = LayerConfig.from_edges(graph, vertical=[0], horizontal=[(1, 2)])
    assert config.open_mask == 0b10001
    assert str(successor(y, config, graph=graph)) == "{{*,0},{1,2}}"


def test_layer_config_validation():
    """Test that layer configurations reject masks and edges that do not fit"""
    with pytest.raises(ValueError):
        LayerConfig(2**6, 6)
    with pytest.raises(ValueError):
        LayerConfig.from_edges(LayerGraph.cycle(4), horizontal=[(0, 2)])


def test_layer_config_open_count():
    """Test that the number of open edges is the popcount of the mask"""
    config = LayerConfig.from_edges(LayerGraph.cycle(3), vertical=[0, 2], horizontal=[(2, 0)])
    assert config.n_open == 3
    assert config.is_open(5)
    assert not config.is_open(1)


def test_canonical_rows():
    """Test the restricted-growth relabelling of rows"""
    rows = np.array([[7, 3, 7, 5], [1, 1, 1, 1], [4, 3, 2, 1]])
    expected = np.array([[0, 1, 0, 2], [0, 0, 0, 0], [0, 1, 2, 3]])
    assert np.array_equal(canonical_rows(rows), expected)


@pytest.mark.parametrize("graph", [LayerGraph.cycle(4), LayerGraph.cycle(5), LayerGraph.line(4)])
def test_sweep_layer_agrees_with_successor(graph):
    """Test that the vectorized layer sweep agrees with the union-find successor"""
    k = graph.n_vertices
    space = enumerate_patterns(k, graph=graph)
    masks = np.random.randint(0, 2**graph.n_edges, size=16)
    for index in range(0, len(space), 3):
        y = space[index]
        top = space.lookup(sweep_layer(space.assignments[index], masks, graph))
        expected = [space.index_of(successor(y, LayerConfig(int(m), graph.n_edges), graph=graph)) for m in masks]
        assert np.array_equal(top, expected)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_kernel_count_stochasticity(k):
    """Test that the counts of each source add up to the number of configurations per open-edge count"""
    kernel = build_kernel(enumerate_patterns(k))
    totals = np.zeros((len(kernel), 2 * k + 1), dtype=np.int64)
    np.add.at(totals, kernel.sources, kernel.counts)
    expected = np.array([comb(2 * k, j, exact=True) for j in range(2 * k + 1)])
    assert np.all(totals == expected[None, :])


def test_kernel_parallel_build_identical():
    """Test that the kernel does not depend on the number of processes"""
    space = enumerate_patterns(4)
    first = build_kernel(space, processes=1)
    second = build_kernel(space, processes=2)
    assert np.array_equal(first.sources, second.sources)
    assert np.array_equal(first.targets, second.targets)
    assert np.array_equal(first.counts, second.counts)


def test_kernel_uninfected_absorbing():
    """Test that uninfected patterns never lead to infected patterns"""
    space = enumerate_patterns(4)
    kernel = build_kernel(space)
    from_dagger = np.isin(kernel.states[kernel.sources], space.dagger)
    assert np.all(np.isin(kernel.states[kernel.targets[from_dagger]], space.dagger))


def test_kernel_brute_force():
    """Test one transition probability against a direct enumeration of all 64 configurations"""
    space = enumerate_patterns(3)
    kernel = build_kernel(space)
    x_star = space.index_of(space.x_star)
    hits = sum(successor(space.x_star, LayerConfig(mask, 6)) == space.x_star for mask in range(64))
    matrix = evaluate(kernel, 0.5)
    assert matrix[x_star, x_star] == pytest.approx(hits / 64, abs=1e-15)

    exact = evaluate(kernel, Fraction(1, 2))
    assert exact[x_star, x_star] == Fraction(hits, 64)
    assert issparse(matrix)
    assert np.allclose(matrix.toarray(), exact.astype(float), atol=1e-15)


def test_kernel_closed_states():
    """Test that a set of states which is not closed is rejected"""
    space = enumerate_patterns(3)
    with pytest.raises(ValueError):
        build_kernel(space, states=space.star)


def test_kernel_rows_order():
    """Test that kernel dumps are sorted by source, target and open-edge count"""
    kernel = build_kernel(enumerate_patterns(3))
    rows = list(kernel.rows())
    assert rows == sorted(rows)
    assert sum(count for *_, count in rows) == len(kernel) * 2**6


@pytest.mark.parametrize("p", [0.0, 0.3, 0.5, 1.0])
def test_evaluate_stochastic(p):
    """Test that evaluated kernels are row-stochastic"""
    matrix = evaluate(build_kernel(enumerate_patterns(3)), p).toarray()
    assert np.allclose(matrix.sum(axis=1), 1, atol=1e-14)
    assert np.all(matrix >= 0)


def test_evaluate_exact_stochastic():
    """Test that exact evaluation gives rows summing to exactly one"""
    matrix = evaluate(build_kernel(enumerate_patterns(3)), Fraction(1, 3))
    assert all(sum(row) == 1 for row in matrix)


def test_evaluate_extremes():
    """Test the transition matrices at p = 0 and p = 1"""
    space = enumerate_patterns(4)
    kernel = build_kernel(space)
    x_dagger, x_star = space.index_of(space.x_dagger), space.index_of(space.x_star)

    assert np.allclose(evaluate(kernel, 0).toarray()[:, x_dagger], 1)
    assert np.allclose(evaluate(kernel, 1).toarray()[space.star, x_star], 1)


def test_evaluate_restriction():
    """Test that the restriction to attainable patterns is substochastic, with positive diagonal and escape"""
    space = enumerate_patterns(4)
    kernel = build_kernel(space)
    for p in (0.1, 0.5, 0.9):
        q = evaluate(kernel, p, subset=space.attainable).toarray()
        assert np.all(np.diag(q) > 0)
        assert np.all(q.sum(axis=1) < 1)


def test_evaluate_out_of_range():
    """Test that percolation parameters outside [0, 1] are rejected"""
    kernel = build_kernel(enumerate_patterns(3))
    with pytest.raises(ProbabilityRangeError):
        evaluate(kernel, 1.5)
    with pytest.raises(ProbabilityRangeError):
        evaluate(kernel, Fraction(-1, 2))


def test_positivity_structure():
    """Test that the positivity structure of the kernel does not depend on p"""
    kernel = build_kernel(enumerate_patterns(4))
    assert np.array_equal(evaluate(kernel, 0.25).toarray() > 0, evaluate(kernel, 0.75).toarray() > 0)


@pytest.mark.parametrize("k", [3, 4])
def test_rotation_equivariance(k):
    """Test that transition counts are invariant under rotation of the cycle"""
    space = enumerate_patterns(k)
    kernel = build_kernel(space)
    counts = {(int(s), int(t)): tuple(c) for s, t, c in zip(kernel.sources, kernel.targets, kernel.counts)}
    for r in range(1, k):
        image = [space.index_of(rotate(x, r)) for x in space]
        rotated = {(image[s], image[t]): c for (s, t), c in counts.items()}
        assert rotated == counts


@pytest.mark.parametrize("k", [3, 4, 5])
@pytest.mark.parametrize("p", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_communication_lower_bound(k, p):
    """Test the uniform lower bound on multi-step transitions between attainable patterns"""
    space = enumerate_patterns(k)
    q = evaluate(build_kernel(space), p, subset=space.attainable).toarray()
    steps = (k + 2) // 2
    bound = p ** ((k**2 + 2) / 2) * (1 - p) ** ((k**2 + k) / 2)
    assert np.all(np.linalg.matrix_power(q, steps) >= bound)


def test_connectivity_kernel():
    """Test the kernel of connectivity partitions"""
    kernel = connectivity_kernel(3)
    assert len(kernel) == 5

    matrix = evaluate(kernel, 0.4).toarray()
    assert np.allclose(matrix.sum(axis=1), 1)

    values, vectors = eig(matrix.T)
    order = np.argsort(-np.abs(values))
    assert np.isclose(values[order[0]], 1)
    assert np.abs(values[order[1]]) < 1 - 1e-6
    rho = np.real(vectors[:, order[0]])
    rho /= rho.sum()
    assert np.linalg.norm(rho @ matrix - rho, ord=1) <= 1e-12


def test_evaluate_at_cap():
    """Test that a kernel row at the largest admissible cycle evaluates to a sparse matrix over every pattern"""
    space = enumerate_patterns(MAX_CYCLE_LENGTH)
    m = space.graph.n_edges
    masks = np.arange(2**m, dtype=np.int64)
    source = space.index_of(space.x_star)
    targets = space.lookup(sweep_layer(space.assignments[source], masks, space.graph))
    n_open = ((masks[:, None] >> np.arange(m)) & 1).sum(axis=1)

    states, inverse = np.unique(targets, return_inverse=True)
    counts = np.bincount(inverse * (m + 1) + n_open, minlength=len(states) * (m + 1)).reshape(len(states), m + 1)
    assert np.array_equal(counts.sum(axis=0), [comb(m, j, exact=True) for j in range(m + 1)])
    kernel = TransitionKernel(space, np.arange(len(space)), np.full(len(states), source), states, counts)

    matrix = evaluate(kernel, 0.3)
    assert issparse(matrix)
    assert matrix.shape == (bell_number(MAX_CYCLE_LENGTH + 1),) * 2
    assert matrix.nnz == len(states)
    assert matrix[source].sum() == pytest.approx(1, abs=1e-12)

    restricted = evaluate(kernel, 0.3, subset=space.star)
    assert restricted.shape == (len(space.star),) * 2
    row = restricted[np.searchsorted(space.star, source)]
    assert 0 < row.sum() < 1
