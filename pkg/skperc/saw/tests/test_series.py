# -*- coding: utf-8 -*-

import numpy as np
import pytest

from skperc import (
    DivergentSeriesError,
    ProbabilityRangeError,
    WalkCensus,
    c2,
    c2_consistency,
    c2_series,
    census,
    theorem3,
    w0_bound,
    w0_terms,
)


def test_theorem3():
    """Test that the expected number of infected vertices per layer cannot grow at p = 0.35"""
    bound = theorem3(0.35)
    assert bound.passed
    assert bound.product <= 1
    assert bound.product == pytest.approx(0.99735, abs=1e-4)
    assert bound.to_dict()["passed"]


def test_w0_bound_terms():
    """Test the decomposition of the series bound"""
    terms = w0_terms(0.35)
    assert set(terms) == {"origin", "straight", "short", "tabulated", "split", "tail"}
    assert sum(terms.values()) == pytest.approx(w0_bound(0.35))
    assert terms["straight"] == pytest.approx(2 * 0.35 / 0.65)


@pytest.mark.parametrize("p", [0.01, 0.1, 0.2, 0.3, 0.36])
def test_w0_bound_trivial(p):
    """Test that the series bound exceeds its first two terms"""
    assert w0_bound(p) >= 1 + 2 * p


def test_w0_bound_monotone():
    """Test that the series bound increases with the percolation parameter"""
    values = [w0_bound(p) for p in np.linspace(0.01, 0.36, 36)]
    assert np.all(np.diff(values) > 0)


def test_w0_bound_divergent():
    """Test that the series bound requires p < 1/2.76"""
    with pytest.raises(DivergentSeriesError):
        w0_bound(0.37)
    with pytest.raises(ProbabilityRangeError):
        w0_bound(0)


def test_w0_bound_short_census():
    """Test that the series bound requires walk counts up to length 22"""
    with pytest.raises(ValueError):
        w0_bound(0.35, census(max_a=10, max_b=10, max_c=2, max_d=2))


def test_w0_bound_reference_default():
    """Test that the series bound defaults to the pinned tables"""
    assert w0_bound(0.3) == w0_bound(0.3, WalkCensus.reference())


@pytest.mark.parametrize("p", [0.05, 0.1, 0.2, 0.3])
def test_c2_series(p):
    """Test that the first-passage series is the growth constant c2"""
    assert c2_series(p) == pytest.approx(c2(p), abs=1e-12)


def test_c2_consistency():
    """Test the first-passage walk counts against the coefficients of c2"""
    report = c2_consistency(0.1)
    assert report.passed, report.violations
    assert report["n_l <= 64 3^(l-7)"].n_points == 9
    with pytest.raises(ProbabilityRangeError):
        c2_consistency(0.34)


def test_c2_consistency_simulated():
    """Test the bound p c2(p)^(n - 1) against simulated numbers of vertices reached"""
    report = c2_consistency(0.1, max_length=8, samples=20_000, horizon=3, seed=7)
    assert report.passed, report.violations
    assert report["E(Wbar_n) <= p c2(p)^(n-1)"].n_points == 3
