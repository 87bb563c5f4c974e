# -*- coding: utf-8 -*-

from dataclasses import replace

import pytest

from skperc import GROWTH_RATE, WalkCensus, a_prime, a_prime_split, census, tail_coefficient, verify_recursions


def test_verify_recursions():
    """Test every recursive bound on the pinned tables"""
    report = verify_recursions()
    assert report.passed, report.violations
    assert report["3/4 c_21 <= 2.76^21"].worst_margin > 0
    assert report["b_(n+1) <= 2.76 b_n"].n_points == 19
    # No pinned count is long enough to compare with the split bounds.
    assert report["a_l <= a'_l"].n_points == 0


def test_boundary_split():
    """Test the split of a walk of length 2 into two single steps"""
    reference = WalkCensus.reference()
    assert reference.a[2] <= reference.b[1] * reference.d[0] * reference.b[1] == 9


@pytest.mark.parametrize("l", range(23, 42))
def test_a_prime_split(l):
    """Test that the split bounds cut walks into pieces of the right total length"""
    l1, l2, l3 = a_prime_split(l)
    assert l1 + l2 + l3 == l
    assert l1 >= 1 and l2 in (19, 20)
    assert max(l1, l3) <= 12


def test_a_prime_values():
    """Test the split bounds on walks of length 23 and 41"""
    reference = WalkCensus.reference()
    assert a_prime(23) == 7 * 7 * 13494874
    assert a_prime(41) == reference.b[10] * reference.d[19] * reference.b[12]
    assert tail_coefficient() == 16225 * 112285 * 34647816
    with pytest.raises(ValueError):
        a_prime(22)


def test_growth_rate():
    """Test the growth rate of the geometric tail"""
    assert float(GROWTH_RATE) == 2.76


def test_recursions_detect_violation():
    """Test that an inconsistent table is reported rather than raised"""
    reference = WalkCensus.reference()
    corrupted = replace(reference, a=reference.a[:10] + (10**9,) + reference.a[11:])
    report = verify_recursions(corrupted)
    assert not report.passed
    check = report["a_(l1+l2+l3) <= b_l1 d_l2 b_l3"]
    assert check.worst_margin < 0
    assert all(sum(v[key] for key in ("l1", "l2", "l3")) == 10 for v in check.violations)


def test_recursions_short_tables():
    """Test that the checks require tables up to the tail lengths"""
    with pytest.raises(ValueError):
        verify_recursions(census(max_a=5, max_b=5, max_c=5, max_d=5))
