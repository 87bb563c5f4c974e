# -*- coding: utf-8 -*-
"""
Short walks near a layer
========================

Counts of the short walks bounding the expected number of vertices one layer up that a vertex reaches
through the layers below it.
"""
from .census import STEPS

N_MAX_LENGTH = 15
RETURN_LENGTH = 3


def first_passage_counts(max_length=N_MAX_LENGTH):
    """
    Walks from ``(0, 0)`` to layer 1 that stay at or below layer 0 until their last step and avoid
    ``(0, -1)``.

    Parameters
    ----------
    max_length : int, optional

    Returns
    -------
    counts : tuple of ints
        Number of walks of each length ``0, ..., max_length``.

    Examples
    --------
    >>> first_passage_counts(6)
    (0, 1, 2, 2, 2, 4, 8)
    """
    counts = [0] * (max_length + 1)
    visited = {(0, 0)}
    forbidden = (0, -1)

    def grow(x, y, l):
        l += 1
        for dx, dy in STEPS:
            nxt = (x + dx, y + dy)
            if nxt in visited or nxt == forbidden:
                continue
            if nxt[1] == 1:
                counts[l] += 1
                continue
            if l < max_length:
                visited.add(nxt)
                grow(*nxt, l)
                visited.discard(nxt)

    if max_length > 0:
        grow(0, 0, 0)
    return tuple(counts)


def return_counts(length=RETURN_LENGTH):
    """
    Walks of a fixed length from ``(0, -i)`` to layer 0 that stay at or below layer 0.

    Parameters
    ----------
    length : int, optional

    Returns
    -------
    counts : tuple of ints
        Number of walks for each depth ``i = 0, ..., length``. Deeper starts cannot reach layer 0.

    Examples
    --------
    >>> return_counts()
    (4, 8, 6, 1)
    """
    return tuple(_ending_in_layer((0, -depth), length) for depth in range(length + 1))


def _ending_in_layer(start, length):
    visited = {start}
    found = 0

    def grow(x, y, l):
        nonlocal found
        if l == length:
            found += y == 0
            return
        for dx, dy in STEPS:
            nxt = (x + dx, y + dy)
            if nxt[1] > 0 or nxt in visited:
                continue
            visited.add(nxt)
            grow(*nxt, l + 1)
            visited.discard(nxt)

    grow(*start, 0)
    return found


def small_counts(max_length=N_MAX_LENGTH):
    """
    Walk counts behind the bound on the expected number of vertices reached one layer up.

    Returns
    -------
    n : tuple of ints
        See :func:`first_passage_counts`.
    k : tuple of ints
        See :func:`return_counts`.
    """
    return first_passage_counts(max_length), return_counts()
