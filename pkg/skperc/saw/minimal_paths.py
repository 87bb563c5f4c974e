# -*- coding: utf-8 -*-
"""
Minimal open paths
==================

Among the open paths in the upper half-plane joining two vertices of layer 0, the one enclosing the fewest
squares against layer 0 is unique. The probability that a given walk is this minimal path only depends on the
edges it encloses, which makes it computable by exhaustion for short walks.
"""
from collections import deque
from warnings import warn

import numpy as np

from ..utils import MinimalPathTieWarning, OracleBudgetError, check_probability, popcount
from .census import iter_walks

ORACLE_MAX_LENGTH = 7
ORACLE_MAX_EDGES = 16


def p_prime(l, p):
    """
    Probability that some non-straight half-plane walk of length `l` from the origin to layer 0 is the
    minimal open path joining its end points, for :math:`l \\in \\{3, 4, 5\\}`.

    Parameters
    ----------
    l : int
    p : float or array_like

    Returns
    -------
    probability : float or array_like

    Examples
    --------
    >>> p_prime(3, 0.5)
    0.125
    """
    if l not in (3, 4, 5):
        raise ValueError(f"Closed forms are available for lengths 3, 4 and 5, but got {l}")
    check_probability(np.max(p))
    check_probability(np.min(p))
    q = 1 - p
    two_closed = q**3 + 3 * p * q**2
    if l == 3:
        return 2 * p**3 * q
    if l == 4:
        return 4 * p**4 * q + 2 * p**4 * two_closed
    return (
        6 * p**5 * q**2
        + 6 * p**5 * q
        + 4 * p**5 * two_closed
        + 2 * p**5 * (q**5 + 5 * p * q**4 + 8 * p**2 * q**3)
    )


def _edge(u, v):
    return (u, v) if u < v else (v, u)


def path_edges(walk):
    """Edges of a walk, as sorted vertex pairs."""
    return {_edge(u, v) for u, v in zip(walk, walk[1:])}


def _baseline(walk):
    """Edges of layer 0 between the end points of a walk."""
    (x0, _), (x1, _) = walk[0], walk[-1]
    lo, hi = min(x0, x1), max(x0, x1)
    return {((x, 0), (x + 1, 0)) for x in range(lo, hi)}


def enclosed_squares(walk):
    """
    Unit squares enclosed between a walk ending in layer 0 and the segment of layer 0 joining its end points.

    Squares are labelled by their lower-left corner.

    Parameters
    ----------
    walk : sequence of 2-tuples

    Returns
    -------
    squares : set of 2-tuples

    Examples
    --------
    >>> sorted(enclosed_squares([(0, 0), (0, 1), (1, 1), (2, 1), (2, 0)]))
    [(0, 0), (1, 0)]
    """
    walls = path_edges(walk) | _baseline(walk)
    xs = [x for x, _ in walk]
    ys = [y for _, y in walk]
    x_min, x_max, y_min, y_max = min(xs) - 1, max(xs), min(ys) - 1, max(ys)

    # Crossing from square (i, j) to its neighbours goes through these edges.
    crossings = (
        (1, 0, lambda i, j: ((i + 1, j), (i + 1, j + 1))),
        (-1, 0, lambda i, j: ((i, j), (i, j + 1))),
        (0, 1, lambda i, j: ((i, j + 1), (i + 1, j + 1))),
        (0, -1, lambda i, j: ((i, j), (i + 1, j))),
    )
    outside = {(x_min, y_min)}
    queue = deque(outside)
    while queue:
        i, j = queue.popleft()
        for di, dj, wall in crossings:
            nxt = (i + di, j + dj)
            if not (x_min <= nxt[0] <= x_max and y_min <= nxt[1] <= y_max) or nxt in outside:
                continue
            if wall(i, j) in walls:
                continue
            outside.add(nxt)
            queue.append(nxt)

    return {
        (i, j) for i in range(x_min, x_max + 1) for j in range(y_min, y_max + 1) if (i, j) not in outside
    }


def size(walk):
    """Number of squares enclosed between a walk and layer 0."""
    return len(enclosed_squares(walk))


def _window(walk):
    """Edges at or below a walk: its own, the segment of layer 0 below it and those of the enclosed squares."""
    edges = path_edges(walk) | _baseline(walk)
    for i, j in enclosed_squares(walk):
        corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
        edges |= {_edge(u, v) for u, v in zip(corners, corners[1:] + corners[:1])}
    return edges


def _connecting_walks(edges, start, stop):
    """Every self-avoiding walk from `start` to `stop` along the given edges."""
    neighbours = dict()
    for u, v in edges:
        neighbours.setdefault(u, list()).append(v)
        neighbours.setdefault(v, list()).append(u)

    walk = [start]
    visited = {start}

    def grow():
        if walk[-1] == stop:
            yield tuple(walk)
            return
        for nxt in neighbours.get(walk[-1], tuple()):
            if nxt not in visited:
                visited.add(nxt)
                walk.append(nxt)
                yield from grow()
                walk.pop()
                visited.discard(nxt)

    yield from grow()


def minimal_path_walks(l):
    """
    Half-plane walks of length `l` from the origin to layer 0 that leave layer 0.

    Yields
    ------
    walk : tuple of 2-tuples
    """
    for walk in iter_walks(l, allowed=lambda v: v[1] >= 0):
        if walk[-1][1] == 0 and any(y > 0 for _, y in walk):
            yield walk


def minimal_path_probability(walk, p, max_edges=ORACLE_MAX_EDGES):
    """
    Probability that `walk` is the minimal open path joining its end points.

    Every assignment of the edges enclosed by the walk is visited. The walk must be open and no other open path
    at or below it may enclose fewer squares.

    Parameters
    ----------
    walk : sequence of 2-tuples
        Half-plane walk with both end points in layer 0.
    p : float
    max_edges : int, optional
        Largest number of enclosed edges to enumerate.

    Returns
    -------
    probability : float

    Raises
    ------
    OracleBudgetError : if the walk encloses more than `max_edges` edges.

    Warns
    -----
    MinimalPathTieWarning : if another open path encloses as many squares as the walk.
    """
    walk = tuple(walk)
    own = path_edges(walk)
    free = sorted(_window(walk) - own)
    if len(free) > max_edges:
        raise OracleBudgetError(f"{len(free)} enclosed edges exceed the budget of {max_edges} edges")
    bit = {edge: i for i, edge in enumerate(free)}

    masks = np.arange(2 ** len(free), dtype=np.int64)
    minimal = np.ones_like(masks, dtype=bool)
    tied = np.zeros_like(masks, dtype=bool)
    own_size = size(walk)
    for other in _connecting_walks(own | set(free), walk[0], walk[-1]):
        if other == walk:
            continue
        needed = sum(1 << bit[e] for e in path_edges(other) if e in bit)
        present = (masks & needed) == needed
        other_size = size(other)
        if other_size < own_size:
            minimal &= ~present
        elif other_size == own_size:
            tied |= present

    if np.any(minimal & tied):
        warn(f"Open paths tie with {walk} for the minimal size {own_size}", MinimalPathTieWarning)
        minimal &= ~tied

    n_open = popcount(masks, len(free))
    weights = p**n_open * (1 - p) ** (len(free) - n_open)
    return float(p ** len(own) * weights[minimal].sum())


def p_prime_oracle(l, p, max_edges=ORACLE_MAX_EDGES):
    """
    Exhaustive evaluation of :func:`p_prime`, for any length up to ``ORACLE_MAX_LENGTH``.

    Parameters
    ----------
    l : int
    p : float
    max_edges : int, optional
        Largest number of enclosed edges per walk.

    Returns
    -------
    probability : float

    Raises
    ------
    OracleBudgetError : if `l` exceeds ``ORACLE_MAX_LENGTH`` or a walk encloses too many edges.
    """
    check_probability(p)
    if l > ORACLE_MAX_LENGTH:
        raise OracleBudgetError(f"Minimal paths are enumerated up to length {ORACLE_MAX_LENGTH}, but got {l}")
    return sum(minimal_path_probability(walk, p, max_edges=max_edges) for walk in minimal_path_walks(l))
