# -*- coding: utf-8 -*-
"""
Infection patterns
==================

A pattern is a partition of the vertex set of a layer together with a marker ``*``. Vertices in the
block of the marker are infected. Patterns are stored in restricted-growth canonical form over the
element order ``0, 1, ..., k - 1, *``.
"""
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from ..utils import CapacityError, InvalidPartitionError

STAR = "*"
MAX_CYCLE_LENGTH = 10

_BLOCK_RE = re.compile(r"\{([^{}]*)\}")


@dataclass(frozen=True)
class LayerGraph:
    """
    Base graph G of a layered graph G x Z.

    Parameters
    ----------
    n_vertices : int
        Number of vertices, labelled ``0, ..., n_vertices - 1``.
    edges : tuple of 2-tuples
        Horizontal edges of a layer, in the order used by layer configurations.
    is_cycle : bool
        Whether G is the cycle on its vertices, in which case `edges` is ``((0, 1), (1, 2), ..., (k - 1, 0))``.
    """

    n_vertices: int
    edges: tuple
    is_cycle: bool = False

    @classmethod
    def cycle(cls, k):
        """Cycle graph C_k, with horizontal edge ``i`` joining ``i`` and ``i + 1 mod k``."""
        if k < 3:
            raise ValueError(f"Cycles require at least 3 vertices, but got {k}")
        return cls(n_vertices=k, edges=tuple((i, (i + 1) % k) for i in range(k)), is_cycle=True)

    @classmethod
    def line(cls, k):
        """Line graph L_k, with horizontal edge ``i`` joining ``i`` and ``i + 1``."""
        if k < 1:
            raise ValueError(f"Line graphs require at least 1 vertex, but got {k}")
        return cls(n_vertices=k, edges=tuple((i, i + 1) for i in range(k - 1)), is_cycle=False)

    @property
    def n_edges(self):
        """Number of edges in a layer configuration: one vertical edge per vertex plus the horizontal edges."""
        return self.n_vertices + len(self.edges)


@dataclass(frozen=True)
class Pattern:
    """
    Partition of the vertices ``0, ..., k - 1`` and the marker ``*``.

    Patterns are compared by their canonical assignment only. Use :func:`canonicalize` or
    :meth:`Pattern.from_string` to build patterns from blocks.

    Parameters
    ----------
    k : int
        Number of vertices.
    assignment : tuple of ints, length k + 1
        Block index of each element, in the order ``0, ..., k - 1, *``, as a restricted-growth string.

    Raises
    ------
    InvalidPartitionError : if `assignment` is not a restricted-growth string of length ``k + 1``.

    Examples
    --------
    >>> x = Pattern.from_string("{{2,4},{*,1,0},{3}}")
    >>> print(x)
    {{*,0,1},{2,4},{3}}
    >>> x.assignment
    (0, 0, 1, 2, 1, 0)
    """

    k: int
    assignment: tuple

    def __post_init__(self):
        assignment = tuple(int(i) for i in self.assignment)
        object.__setattr__(self, "assignment", assignment)
        if len(assignment) != self.k + 1:
            raise InvalidPartitionError(f"Expected {self.k + 1} block indices, but got {len(assignment)}")
        largest = -1
        for index in assignment:
            if index > largest + 1 or index < 0:
                raise InvalidPartitionError(f"{assignment} is not a restricted-growth string")
            largest = max(largest, index)

    @classmethod
    def from_string(cls, text, k=None):
        """
        Parse the text format, e.g. ``{{*,0,1},{2,4},{3}}``.

        Parameters
        ----------
        text : str
            Pattern in text format. Block and element order is irrelevant.
        k : int or None, optional
            Number of vertices. If None, inferred from the largest vertex label.

        Returns
        -------
        pattern : Pattern
        """
        inner = text.strip()
        if not (inner.startswith("{") and inner.endswith("}")):
            raise InvalidPartitionError(f"Malformed pattern text: {text!r}")
        blocks = list()
        for content in _BLOCK_RE.findall(inner[1:-1]):
            elements = [e.strip() for e in content.split(",") if e.strip()]
            blocks.append([STAR if e == STAR else int(e) for e in elements])
        return canonicalize(blocks, k=k)

    @classmethod
    def from_json(cls, blocks, k=None):
        """Build a pattern from its JSON form, an array of arrays with ``"*"`` as a string element."""
        return canonicalize(blocks, k=k)

    @property
    def infected_block(self):
        """Index of the block containing the marker."""
        return self.assignment[self.k]

    @cached_property
    def infected(self):
        """Vertices that share the block of the marker."""
        return frozenset(v for v in range(self.k) if self.assignment[v] == self.infected_block)

    @property
    def is_infected(self):
        """Whether this pattern is in M*, i.e. whether the block of the marker contains a vertex."""
        return bool(self.infected)

    @property
    def n_blocks(self):
        return max(self.assignment) + 1

    def blocks(self):
        """
        Blocks in display order.

        The marker comes first in its block, which comes first; vertices are sorted, and the other blocks are
        sorted by their smallest vertex.

        Returns
        -------
        blocks : list of lists
        """
        members = [list() for _ in range(self.n_blocks)]
        members[self.infected_block].append(STAR)
        for v in range(self.k):
            members[self.assignment[v]].append(v)
        return sorted(members, key=lambda block: -1 if block[0] == STAR else block[0])

    def partition(self):
        """Partition of the vertices alone, as a tuple of tuples, ignoring the marker."""
        members = dict()
        for v in range(self.k):
            members.setdefault(self.assignment[v], list()).append(v)
        return tuple(tuple(block) for block in members.values())

    def same_block(self, first, second):
        """Whether two elements (vertices or the marker) share a block."""
        return self.assignment[self._position(first)] == self.assignment[self._position(second)]

    def with_marker_at(self, vertex):
        """Pattern with the marker moved into the block of `vertex`."""
        blocks = [list(block) for block in self.partition()]
        for block in blocks:
            if vertex in block:
                block.append(STAR)
        return canonicalize(blocks, k=self.k)

    def without_marker(self):
        """Pattern with the marker isolated in its own block; an element of M-dagger."""
        return canonicalize(list(self.partition()) + [[STAR]], k=self.k)

    def to_json(self):
        """JSON form: an array of arrays with ``"*"`` as a string element."""
        return self.blocks()

    def __str__(self):
        return "{" + ",".join("{" + ",".join(str(e) for e in block) + "}" for block in self.blocks()) + "}"

    def __repr__(self):
        return f"Pattern.from_string('{self}', k={self.k})"

    def _position(self, element):
        if element == STAR:
            return self.k
        if not 0 <= element < self.k:
            raise ValueError(f"Vertex {element} is not in 0..{self.k - 1}")
        return element


def canonicalize(raw_blocks, k=None):
    """
    Canonical pattern from a collection of disjoint blocks.

    Parameters
    ----------
    raw_blocks : iterable of iterables
        Blocks of vertices ``0, ..., k - 1`` and the marker ``"*"``. Order is irrelevant.
    k : int or None, optional
        Number of vertices. If None, inferred from the largest vertex.

    Returns
    -------
    pattern : Pattern

    Raises
    ------
    InvalidPartitionError : if blocks overlap or do not cover every vertex and the marker exactly once.

    Examples
    --------
    >>> print(canonicalize([[STAR], [0], [1], [2]]))
    {{*},{0},{1},{2}}
    """
    blocks = [list(block) for block in raw_blocks]
    vertices = [e for block in blocks for e in block if e != STAR]
    if k is None:
        k = max(vertices) + 1 if vertices else 0

    owner = dict()
    for index, block in enumerate(blocks):
        for element in block:
            if element != STAR and not (isinstance(element, (int, np.integer)) and 0 <= element < k):
                raise InvalidPartitionError(f"Element {element!r} is neither a vertex of 0..{k - 1} nor the marker")
            key = STAR if element == STAR else int(element)
            if key in owner:
                raise InvalidPartitionError(f"Element {key} appears in more than one block")
            owner[key] = index

    missing = [e for e in list(range(k)) + [STAR] if e not in owner]
    if missing:
        raise InvalidPartitionError(f"Blocks do not cover elements {missing}")

    relabel = dict()
    assignment = list()
    for element in list(range(k)) + [STAR]:
        assignment.append(relabel.setdefault(owner[element], len(relabel)))
    return Pattern(k=k, assignment=tuple(assignment))


def restricted_growth_strings(length):
    """
    Generate every restricted-growth string of a given length, in lexicographic order.

    Parameters
    ----------
    length : int

    Yields
    ------
    rgs : tuple of ints

    Examples
    --------
    >>> list(restricted_growth_strings(3))
    [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)]
    """
    if length == 0:
        yield tuple()
        return

    current = [0] * length
    maxima = [0] * length  # maxima[i] = max(current[:i + 1])

    def extend(position):
        if position == length:
            yield tuple(current)
            return
        for value in range(maxima[position - 1] + 2):
            current[position] = value
            maxima[position] = max(maxima[position - 1], value)
            yield from extend(position + 1)

    yield from extend(1)


class PatternSpace:
    """
    Indexed enumeration of every pattern on a layer graph.

    Use :func:`enumerate_patterns` to build instances.

    Attributes
    ----------
    graph : LayerGraph
    patterns : tuple of Pattern
        All patterns, in lexicographic order of their assignments.
    star : `~numpy.ndarray`
        Indices of infected patterns (M*).
    dagger : `~numpy.ndarray`
        Indices of uninfected patterns (M-dagger).
    """

    def __init__(self, graph, patterns):
        self.graph = graph
        self.k = graph.n_vertices
        self.patterns = tuple(patterns)
        self.index = {x: i for i, x in enumerate(self.patterns)}

        infected = np.array([x.is_infected for x in self.patterns], dtype=bool)
        self.star = np.flatnonzero(infected)
        self.dagger = np.flatnonzero(~infected)

        self.assignments = np.array([x.assignment for x in self.patterns], dtype=np.int64)
        self._powers = (self.k + 1) ** np.arange(self.k + 1, dtype=np.int64)
        keys = self.assignments @ self._powers
        self._order = np.argsort(keys)
        self._sorted_keys = keys[self._order]

    def __len__(self):
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def __getitem__(self, index):
        return self.patterns[index]

    def __contains__(self, pattern):
        return pattern in self.index

    @property
    def x_dagger(self):
        """The fully disconnected uninfected pattern."""
        return Pattern(k=self.k, assignment=tuple(range(self.k + 1)))

    @property
    def x_star(self):
        """The fully connected infected pattern."""
        return Pattern(k=self.k, assignment=(0,) * (self.k + 1))

    def index_of(self, pattern):
        """Index of a pattern in this space."""
        try:
            return self.index[pattern]
        except KeyError:
            raise ValueError(f"Pattern {pattern} is not in the state space of {self.k} vertices") from None

    def lookup(self, assignments):
        """
        Indices of many canonical assignments at once.

        Parameters
        ----------
        assignments : `~numpy.ndarray`, shape (N, k + 1)
            Canonical restricted-growth rows.

        Returns
        -------
        indices : `~numpy.ndarray`, shape (N,)
        """
        keys = np.asarray(assignments, dtype=np.int64) @ self._powers
        positions = np.searchsorted(self._sorted_keys, keys)
        positions = np.minimum(positions, len(self._sorted_keys) - 1)
        if np.any(self._sorted_keys[positions] != keys):
            raise ValueError("Some assignments are not canonical patterns of this space")
        return self._order[positions]

    @cached_property
    def attainable(self):
        """Indices of the attainable infected patterns. Builds the layer kernel on first access."""
        from .kernel import build_kernel

        return attainable_states(self, build_kernel(self))


def enumerate_patterns(k, graph=None, cap=MAX_CYCLE_LENGTH):
    """
    Enumerate every pattern on ``k`` vertices.

    Parameters
    ----------
    k : int
        Number of vertices. At least 3 for cycles.
    graph : LayerGraph or None, optional
        Base graph. Defaults to the cycle C_k.
    cap : int, optional
        Largest admissible number of vertices.

    Returns
    -------
    space : PatternSpace

    Raises
    ------
    CapacityError : if `k` exceeds `cap`.

    Examples
    --------
    >>> space = enumerate_patterns(3)
    >>> len(space), len(space.star), len(space.dagger)
    (15, 10, 5)
    """
    if k > cap:
        raise CapacityError(
            f"{k} vertices exceed the cap of {cap}: "
            f"the pattern space would hold Bell({k + 1}) = {bell_number(k + 1)} states"
        )
    if graph is None:
        graph = LayerGraph.cycle(k)
    elif graph.n_vertices != k:
        raise ValueError(f"Graph has {graph.n_vertices} vertices, but k = {k}")
    return PatternSpace(graph, (Pattern(k=k, assignment=a) for a in restricted_growth_strings(k + 1)))


def is_noncrossing(x, graph=None):
    """
    Whether a pattern on a cycle is noncrossing.

    A pattern is crossing if there are vertices ``v1 < v2 < v3 < v4`` with ``v1 ~ v3`` and ``v2 ~ v4`` but not
    ``v1 ~ v2``. The marker is ignored.

    Parameters
    ----------
    x : Pattern
    graph : LayerGraph or None, optional
        Base graph of `x`. Defaults to the cycle.

    Returns
    -------
    noncrossing : bool

    Raises
    ------
    ValueError : if `graph` is not a cycle.
    """
    if graph is not None and not graph.is_cycle:
        raise ValueError("Noncrossing patterns are only defined on cycles")
    a = x.assignment
    for v1, v2, v3, v4 in combinations(range(x.k), 4):
        if a[v1] == a[v3] and a[v2] == a[v4] and a[v1] != a[v2]:
            return False
    return True


def rotate(x, r):
    """
    Relabel the vertices of a cycle pattern by ``v -> (v + r) mod k``.

    Parameters
    ----------
    x : Pattern
    r : int

    Returns
    -------
    rotated : Pattern

    Examples
    --------
    >>> print(rotate(Pattern.from_string("{{*,0},{1},{2}}"), 1))
    {{*,1},{0},{2}}
    """
    return canonicalize([[e if e == STAR else (e + r) % x.k for e in block] for block in x.blocks()], k=x.k)


def reachable_states(kernel, sources):
    """
    Breadth-first closure of a set of states under positive-probability transitions.

    Parameters
    ----------
    kernel : TransitionKernel
    sources : iterable of ints
        Pattern indices (in the pattern space) to start from.

    Returns
    -------
    reached : `~numpy.ndarray`
        Sorted pattern indices.
    """
    local = {int(s): i for i, s in enumerate(kernel.states)}
    seen = {local[int(s)] for s in sources}
    queue = deque(seen)
    while queue:
        i = queue.popleft()
        for j in kernel.successors(i):
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return np.sort(kernel.states[list(seen)])


def attainable_states(space, kernel, origin=0):
    """
    Attainable infected patterns.

    These are the infected patterns reachable from the support of the law of the layer-0 pattern, whose
    partitions are the recurrent connectivity partitions and whose marker sits with `origin`.

    Parameters
    ----------
    space : PatternSpace
    kernel : TransitionKernel
        Kernel over all patterns of `space`.
    origin : int, optional
        Vertex carrying the infection at layer 0.

    Returns
    -------
    attainable : `~numpy.ndarray`
        Sorted pattern indices.
    """
    if kernel.space is not space and kernel.space.graph != space.graph:
        raise ValueError("Kernel was built for another pattern space")
    recurrent = reachable_states(kernel, [space.index_of(space.x_dagger)])
    initial = [space.index_of(space[z].with_marker_at(origin)) for z in recurrent]
    reached = reachable_states(kernel, initial)
    return np.intersect1d(reached, space.star)


def initial_support(space, kernel, origin=0):
    """Pattern indices carrying positive mass under the law of the layer-0 pattern."""
    recurrent = reachable_states(kernel, [space.index_of(space.x_dagger)])
    return np.unique([space.index_of(space[z].with_marker_at(origin)) for z in recurrent])


def bell_number(n):
    """
    Number of partitions of a set of ``n`` elements, from the Bell triangle.

    Examples
    --------
    >>> [bell_number(n) for n in range(6)]
    [1, 1, 2, 5, 15, 52]
    """
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]
