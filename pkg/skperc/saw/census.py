# -*- coding: utf-8 -*-
"""
Census of self-avoiding walks
=============================

Exact counts of self-avoiding walks on the square lattice, by backtracking. Walks are grown on a flat
array of sites; the walks of a fixed prefix length are distributed over worker processes and their
count vectors are summed, so that the census does not depend on the number of workers.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from warnings import warn

import numpy as np
from npstreams import isum, last, pmap
from yaml import load

from ..utils import CensusTruncatedWarning

try:
    from yaml import CLoader as Loader
except ImportError:
    from yaml import Loader

log = logging.getLogger(__name__)

DATADIR = Path(__file__).parent / "data"

with open(DATADIR / "reference_tables.yaml") as f:
    REFERENCE = load(f, Loader=Loader)

PREFIX_DEPTH = 6
DEFAULT_CENSUS_BUDGET = 10**10

# Walks beyond the pinned tables are estimated with this growth per step.
_GROWTH_ESTIMATE = 2.7

# Neighbours of the origin, in the order of the bits of the visited-neighbour masks.
NEIGHBOURS = ((0, 1), (0, -1), (1, 0), (-1, 0))

STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass(frozen=True)
class _Lattice:
    """Square of sites ``|x|, |y| <= radius`` stored row by row, surrounded by a frame of blocked sites."""

    radius: int
    half_plane: bool = False

    @property
    def width(self):
        return 2 * self.radius + 3

    @property
    def origin(self):
        return self.site(0, 0)

    @property
    def ground(self):
        """Row of layer 0."""
        return self.radius + 1

    @property
    def steps(self):
        return (1, -1, self.width, -self.width)

    def site(self, x, y):
        return (y + self.radius + 1) * self.width + x + self.radius + 1

    def blocked(self):
        """Visited flags with the frame, and the lower half-plane if excluded, already set."""
        width = self.width
        visited = bytearray(width * width)
        for i in range(width):
            for j in (0, width - 1):
                visited[j * width + i] = 1
                visited[i * width + j] = 1
        if self.half_plane:
            visited[: self.ground * width] = b"\x01" * (self.ground * width)
        return visited


def _half_plane_counts(lattice, length, prefix, limit=None):
    """
    Half-plane walks extending `prefix`, counted by length.

    Returns a ``(2, length + 1)`` array: walks ending in layer 0, and walks ending anywhere.
    """
    limit = length if limit is None else limit
    visited = lattice.blocked()
    for site in prefix:
        visited[site] = 1
    width, ground, steps = lattice.width, lattice.ground, lattice.steps
    ending, anywhere = [0] * (length + 1), [0] * (length + 1)

    def grow(site, l):
        l += 1
        for step in steps:
            nxt = site + step
            if visited[nxt]:
                continue
            anywhere[l] += 1
            if nxt // width == ground:
                ending[l] += 1
            if l < limit:
                visited[nxt] = 1
                grow(nxt, l)
                visited[nxt] = 0

    if len(prefix) - 1 < limit:
        grow(prefix[-1], len(prefix) - 1)
    return np.array([ending, anywhere], dtype=np.int64)


def _full_plane_counts(lattice, length, bucket_length, prefix, limit=None):
    """
    Whole-plane walks extending `prefix`, counted by length.

    Walks of length at most `bucket_length` are also tallied by end layer and by the set of neighbours of
    the origin they visit. Returns a flat array: ``length + 1`` walk counts followed by the buckets, of
    shape ``(bucket_length + 1, 2 * bucket_length + 1, 16)``.
    """
    limit = length if limit is None else limit
    visited = lattice.blocked()
    flags = bytearray(len(visited))
    for bit, (x, y) in enumerate(NEIGHBOURS):
        flags[lattice.site(x, y)] = 1 << bit
    mask = 0
    for site in prefix:
        visited[site] = 1
        mask |= flags[site]

    width, steps = lattice.width, lattice.steps
    offset = bucket_length - lattice.ground
    span = 2 * bucket_length + 1
    walks = [0] * (length + 1)
    buckets = [0] * ((bucket_length + 1) * span * 16)

    def grow(site, l, mask):
        l += 1
        for step in steps:
            nxt = site + step
            if visited[nxt]:
                continue
            walks[l] += 1
            reached = mask | flags[nxt]
            if l <= bucket_length:
                buckets[(l * span + nxt // width + offset) * 16 + reached] += 1
            if l < limit:
                visited[nxt] = 1
                grow(nxt, l, reached)
                visited[nxt] = 0

    if len(prefix) - 1 < limit:
        grow(prefix[-1], len(prefix) - 1, mask)
    return np.concatenate([np.array(walks, dtype=np.int64), np.array(buckets, dtype=np.int64)])


def _prefixes(lattice, depth):
    """Every walk of length `depth`, as a tuple of sites."""
    visited = lattice.blocked()
    walk = [lattice.origin]
    visited[lattice.origin] = 1
    found = list()

    def grow():
        if len(walk) == depth + 1:
            found.append(tuple(walk))
            return
        for step in lattice.steps:
            nxt = walk[-1] + step
            if not visited[nxt]:
                visited[nxt] = 1
                walk.append(nxt)
                grow()
                walk.pop()
                visited[nxt] = 0

    grow()
    return found


def _enumerate(worker, lattice, length, args=tuple(), processes=1):
    """Sum of the counts of `worker` over every walk, split on prefixes of length ``PREFIX_DEPTH``."""
    depth = min(PREFIX_DEPTH, length)
    head = worker(lattice, length, *args, (lattice.origin,), limit=depth)
    if depth == length:
        return head
    prefixes = _prefixes(lattice, depth)
    log.debug(f"Distributing {len(prefixes)} walk prefixes of length {depth} over {processes} process(es)")
    parts = pmap(worker, prefixes, args=(lattice, length) + tuple(args), processes=processes, ntotal=len(prefixes))
    return last(isum(_chain_head(head, parts), dtype=np.int64))


def _chain_head(head, parts):
    yield head
    yield from parts


def iter_walks(length, start=(0, 0), allowed=None):
    """
    Generate every self-avoiding walk of a given length.

    Parameters
    ----------
    length : int
        Number of steps.
    start : 2-tuple of ints, optional
        First vertex.
    allowed : callable or None, optional
        Predicate on vertices ``(x, y)``; walks only visit vertices for which it is True.
        By default, every vertex is allowed.

    Yields
    ------
    walk : tuple of 2-tuples
        Vertices of the walk, starting with `start`.

    Examples
    --------
    >>> sum(1 for _ in iter_walks(2))
    12
    >>> sum(1 for w in iter_walks(6, allowed=lambda v: v[1] >= 0) if w[-1][1] == 0)
    40
    """
    walk = [tuple(start)]
    visited = {walk[0]}

    def grow():
        if len(walk) == length + 1:
            yield tuple(walk)
            return
        x, y = walk[-1]
        for dx, dy in STEPS:
            nxt = (x + dx, y + dy)
            if nxt in visited or (allowed is not None and not allowed(nxt)):
                continue
            visited.add(nxt)
            walk.append(nxt)
            yield from grow()
            walk.pop()
            visited.discard(nxt)

    yield from grow()


@dataclass(frozen=True)
class WalkCensus:
    """
    Counts of self-avoiding walks from the origin of the square lattice, indexed by length.

    The upper half-plane contains the horizontal edges of layer 0 and every edge above.

    Attributes
    ----------
    a : tuple of ints
        Walks in the upper half-plane ending in layer 0.
    b : tuple of ints
        Walks in the upper half-plane.
    c : tuple of ints
        Walks in the whole plane.
    d : tuple of ints
        Largest number of whole-plane walks ending in a fixed layer and avoiding a fixed neighbour of the
        origin.
    avk : `~numpy.ndarray` or None
        Whole-plane walks of length ``l`` ending in layer ``j`` and avoiding the neighbour ``NEIGHBOURS[v]``,
        at index ``[l, j + len(d) - 1, v]``. None for pinned tables.
    n : tuple of ints
        Walks from the origin to layer 1, entering it at the last step, that avoid ``(0, -1)``.
    k : tuple of ints
        Walks of length 3 from ``(0, -i)`` to layer 0 in the lower half-plane, indexed by ``i``.
    complete : bool
        False if the census was cut short by its budget.
    """

    a: tuple
    b: tuple
    c: tuple
    d: tuple
    avk: np.ndarray = field(default=None, repr=False, compare=False)
    n: tuple = tuple()
    k: tuple = tuple()
    complete: bool = True

    @classmethod
    def reference(cls):
        """
        Pinned tables, with whole-plane counts from OEIS A001411.

        Examples
        --------
        >>> census = WalkCensus.reference()
        >>> census.a[6], census.b[21], census.c[21], census.d[20]
        (40, 681552747, 2408806028, 34647816)
        """
        tables = {name: tuple(REFERENCE[name]) for name in "abcdnk"}
        return cls(**tables)

    @property
    def lengths(self):
        """Largest length of each table."""
        return {name: len(getattr(self, name)) - 1 for name in "abcd"}

    def avoiding(self, l, layer, v):
        """
        Number of whole-plane walks of length `l` ending in `layer` and avoiding a neighbour of the origin.

        Parameters
        ----------
        l : int
        layer : int
        v : 2-tuple
            Neighbour of the origin, one of ``NEIGHBOURS``.
        """
        if self.avk is None:
            raise ValueError("Walk counts by end layer are only available for computed censuses")
        if not abs(layer) <= l < len(self.d):
            return 0
        return int(self.avk[l, layer + len(self.d) - 1, NEIGHBOURS.index(tuple(v))])

    def rows(self):
        """
        Table rows ``l, a, b, c, d``, with None where a table stops.

        Returns
        -------
        rows : list of dicts
        """
        longest = max(self.lengths.values())
        return [
            {"l": l, **{name: (table[l] if l < len(table) else None) for name, table in self._tables()}}
            for l in range(longest + 1)
        ]

    def to_dict(self):
        return {
            "complete": self.complete,
            **{name: list(table) for name, table in self._tables()},
            "n": list(self.n),
            "k": list(self.k),
        }

    def _tables(self):
        return [(name, getattr(self, name)) for name in "abcd"]


def _estimated_walks(table, l):
    if l < len(table):
        return table[l]
    return table[-1] * _GROWTH_ESTIMATE ** (l - len(table) + 1)


def _cost(half, full):
    """Estimated number of walks visited by the two enumerations."""
    return sum(_estimated_walks(REFERENCE["b"], l) for l in range(half + 1)) + sum(
        _estimated_walks(REFERENCE["c"], l) for l in range(full + 1)
    )


def _fit_budget(lengths, budget):
    """Shorten the longest requested tables until the estimated work fits the budget."""
    fitted = dict(lengths)
    while _cost(max(fitted["a"], fitted["b"]), max(fitted["c"], fitted["d"])) > budget:
        longest = max(fitted.values())
        if longest == 0:
            break
        fitted = {name: min(value, longest - 1) for name, value in fitted.items()}
    return fitted


def census(max_a=22, max_b=21, max_c=21, max_d=20, processes=1, budget=DEFAULT_CENSUS_BUDGET, small=False):
    """
    Count self-avoiding walks on the square lattice by exhaustive enumeration.

    Parameters
    ----------
    max_a, max_b, max_c, max_d : int, optional
        Largest length of each table. See :class:`WalkCensus`.
    processes : int, optional
        Number of worker processes. Counts do not depend on it.
    budget : int, optional
        Largest number of walks to visit, estimated up front from the pinned tables. Tables that do not fit
        are shortened.
    small : bool, optional
        If True, the counts of :func:`small_counts` are included as well.

    Returns
    -------
    census : WalkCensus

    Raises
    ------
    ValueError : if a length is negative.

    Warns
    -----
    CensusTruncatedWarning : if the budget shortens any table.

    Examples
    --------
    >>> census(max_a=6, max_b=4, max_c=5, max_d=3).a
    (1, 2, 2, 4, 8, 20, 40)
    """
    requested = {"a": max_a, "b": max_b, "c": max_c, "d": max_d}
    for name, value in requested.items():
        if int(value) != value or value < 0:
            raise ValueError(f"Table lengths must be nonnegative integers, but got max_{name}={value}")
    requested = {name: int(value) for name, value in requested.items()}

    lengths = _fit_budget(requested, budget)
    complete = lengths == requested
    if not complete:
        warn(
            f"Census budget of {budget} walks allows tables up to {lengths}, instead of {requested}",
            CensusTruncatedWarning,
        )

    half = max(lengths["a"], lengths["b"])
    log.info(f"Counting half-plane walks up to length {half}")
    counts = _enumerate(_half_plane_counts, _Lattice(half, half_plane=True), half, processes=processes)
    counts[:, 0] = 1
    a = tuple(int(i) for i in counts[0, : lengths["a"] + 1])
    b = tuple(int(i) for i in counts[1, : lengths["b"] + 1])

    full, bucket_length = max(lengths["c"], lengths["d"]), lengths["d"]
    log.info(f"Counting whole-plane walks up to length {full}")
    flat = _enumerate(_full_plane_counts, _Lattice(full), full, args=(bucket_length,), processes=processes)
    walks = flat[: full + 1]
    walks[0] = 1
    c = tuple(int(i) for i in walks[: lengths["c"] + 1])

    span = 2 * bucket_length + 1
    buckets = flat[full + 1 :].reshape((bucket_length + 1, span, 16))
    buckets[0, bucket_length, 0] = 1
    masks = np.arange(16)
    avk = np.stack([buckets[:, :, (masks >> v & 1) == 0].sum(axis=-1) for v in range(len(NEIGHBOURS))], axis=-1)
    d = tuple(int(avk[l].max()) for l in range(bucket_length + 1))

    n, k = tuple(), tuple()
    if small:
        from .small import small_counts

        n, k = small_counts()

    return WalkCensus(a=a, b=b, c=c, d=d, avk=avk, n=n, k=k, complete=complete)
