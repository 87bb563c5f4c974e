# -*- coding: utf-8 -*-

import pytest

from skperc import first_passage_counts, return_counts, small_counts


def test_first_passage_counts():
    """Test the number of short walks entering layer 1 at their last step"""
    assert first_passage_counts(6)[1:] == (1, 2, 2, 2, 4, 8)


def test_first_passage_geometric_bound():
    """Test that longer first-passage walks are bounded by 64 3^(l - 7)"""
    n, _ = small_counts()
    assert len(n) == 16
    for l in range(7, 16):
        assert n[l] <= 64 * 3 ** (l - 7), l


def test_return_counts():
    """Test the number of walks of length 3 from below layer 0 to layer 0"""
    assert return_counts() == (4, 8, 6, 1)
    assert return_counts(1) == (2, 1)


@pytest.mark.parametrize("length", [0, 1])
def test_first_passage_degenerate(length):
    """Test first-passage counts for the shortest lengths"""
    assert first_passage_counts(length) == (0, 1)[: length + 1]
