"""Partially directed graphs over dense integer vertices.

An undirected edge ``a - b`` is stored as the two arcs ``a -> b`` and
``b -> a``; a directed edge ``a -> b`` is the arc ``a -> b`` alone.  Arcs are
kept as one out-mask and one in-mask (Python ints used as bitsets) per
vertex, so set operations in the inner loops of the algorithms are cheap.
"""

from __future__ import annotations

import enum
import heapq
from collections.abc import Iterable, Iterator, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graphs, bad vertex ids or unparsable graph files."""


class NotADAGError(GraphError):
    pass


class EdgeKind(enum.Enum):
    NONE = "none"
    DIRECTED_AB = "directed_ab"
    DIRECTED_BA = "directed_ba"
    UNDIRECTED = "undirected"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_set(mask: int) -> set[int]:
    return set(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable graph with directed and undirected edges.

    Build one with :meth:`from_edges`, :meth:`from_arcs` or
    :meth:`from_matrix`.  All "modifying" methods return new graphs.
    """

    __slots__ = ("n", "_out", "_in", "par", "chi", "names", "_hash")

    def __init__(self, n: int, out_masks: Sequence[int], names: Sequence[str] | None = None):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        if len(out_masks) != n:
            raise GraphError("need one out-mask per vertex")
        full = (1 << n) - 1
        ins = [0] * n
        for a, m in enumerate(out_masks):
            if m & ~full:
                raise GraphError(f"arc from {a} points outside 0..{n - 1}")
            if m >> a & 1:
                raise GraphError(f"self-loop at vertex {a}")
            for b in iter_bits(m):
                ins[b] |= 1 << a
        if names is not None:
            names = tuple(names)
            if len(names) != n:
                raise GraphError(f"{len(names)} names given for {n} vertices")
            if len(set(names)) != n:
                raise GraphError("vertex names must be unique")
        self.n = n
        self._out = tuple(int(m) for m in out_masks)
        self._in = tuple(ins)
        # directed-only parent / child masks, indexed by vertex
        self.par = tuple(i & ~o for i, o in zip(self._in, self._out))
        self.chi = tuple(o & ~i for i, o in zip(self._in, self._out))
        self.names = names
        self._hash = None

    # construction

    @classmethod
    def empty(cls, n: int, names: Sequence[str] | None = None) -> Graph:
        return cls(n, [0] * n, names)

    @classmethod
    def complete_undirected(cls, n: int, names: Sequence[str] | None = None) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << v) for v in range(n)], names)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]], names=None) -> Graph:
        out = [0] * n
        for a, b in arcs:
            a, b = int(a), int(b)
            _check_pair(n, a, b)
            out[a] |= 1 << b
        return cls(n, out, names)

    @classmethod
    def from_edges(
        cls,
        n: int,
        directed: Iterable[tuple[int, int]] = (),
        undirected: Iterable[tuple[int, int]] = (),
        names: Sequence[str] | None = None,
    ) -> Graph:
        arcs = list(directed)
        for a, b in undirected:
            arcs += [(a, b), (b, a)]
        return cls.from_arcs(n, arcs, names)

    @classmethod
    def from_matrix(cls, matrix, names=None) -> Graph:
        """``matrix[a, b]`` true means the arc ``a -> b`` is stored."""
        m = np.asarray(matrix, dtype=bool)
        n = m.shape[0]
        if m.shape != (n, n):
            raise GraphError("adjacency matrix must be square")
        out = [mask_of(np.flatnonzero(m[a]).tolist()) for a in range(n)]
        return cls(n, out, names)

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for a in range(self.n):
            for b in iter_bits(self._out[a]):
                m[a, b] = True
        return m

    def with_names(self, names: Sequence[str] | None) -> Graph:
        return Graph(self.n, self._out, names)

    def without_arcs(self, arcs: Iterable[tuple[int, int]]) -> Graph:
        out = list(self._out)
        for a, b in arcs:
            out[a] &= ~(1 << b)
        return Graph(self.n, out, self.names)

    # queries

    def _check(self, a: int) -> None:
        if not 0 <= a < self.n:
            raise GraphError(f"vertex {a} out of range 0..{self.n - 1}")

    def has_arc(self, a: int, b: int) -> bool:
        return bool(self._out[a] >> b & 1)

    def adjacent(self, a: int, b: int) -> bool:
        return bool((self._out[a] | self._in[a]) >> b & 1)

    def adj_mask(self, v: int) -> int:
        return self._out[v] | self._in[v]

    def out_mask(self, v: int) -> int:
        return self._out[v]

    def in_mask(self, v: int) -> int:
        return self._in[v]

    def parents_mask(self, v: int) -> int:
        """Vertices ``u`` with a directed edge ``u -> v`` (undirected edges excluded)."""
        return self.par[v]

    def children_mask(self, v: int) -> int:
        return self.chi[v]

    def undirected_mask(self, v: int) -> int:
        return self._out[v] & self._in[v]

    def parents(self, v: int) -> set[int]:
        return bits_to_set(self.parents_mask(v))

    def children(self, v: int) -> set[int]:
        return bits_to_set(self.children_mask(v))

    def neighbors(self, v: int) -> set[int]:
        return bits_to_set(self.adj_mask(v))

    def arcs(self) -> Iterator[tuple[int, int]]:
        for a in range(self.n):
            for b in iter_bits(self._out[a]):
                yield a, b

    def directed_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in iter_bits(self.children_mask(a))]

    def undirected_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in iter_bits(self.undirected_mask(a)) if a < b]

    def adjacencies(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in iter_bits(self.adj_mask(a)) if a < b]

    def num_adjacencies(self) -> int:
        return sum(self.adj_mask(a).bit_count() for a in range(self.n)) // 2

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    # dunder

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._out == other._out

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self._out))
        return self._hash

    def __repr__(self) -> str:
        parts = [f"{self.name(a)}->{self.name(b)}" for a, b in self.directed_edges()]
        parts += [f"{self.name(a)}--{self.name(b)}" for a, b in self.undirected_edges()]
        return f"Graph(n={self.n}, [{', '.join(parts)}])"


def _check_pair(n: int, a: int, b: int) -> None:
    if not (0 <= a < n and 0 <= b < n):
        raise GraphError(f"vertex pair ({a}, {b}) out of range 0..{n - 1}")
    if a == b:
        raise GraphError(f"self-loop at vertex {a}")


def edge_kind(g: Graph, a: int, b: int) -> EdgeKind:
    _check_pair(g.n, a, b)
    ab, ba = g.has_arc(a, b), g.has_arc(b, a)
    if ab and ba:
        return EdgeKind.UNDIRECTED
    if ab:
        return EdgeKind.DIRECTED_AB
    if ba:
        return EdgeKind.DIRECTED_BA
    return EdgeKind.NONE


def _closure(step, start: int) -> int:
    seen = 0
    frontier = start
    while frontier:
        seen |= frontier
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= step(v)
        frontier = nxt & ~seen
    return seen


def descendants_mask(g: Graph, a: int) -> int:
    """Descendants of ``a`` along directed edges, as a bitmask.

    ``a`` is included only if it lies on a directed cycle.
    """
    return _closure(g.children_mask, g.children_mask(a))


def ancestors_mask(g: Graph, a: int) -> int:
    return _closure(g.parents_mask, g.parents_mask(a))


def descendants(g: Graph, a: int) -> set[int]:
    """All ``b`` reachable from ``a`` by a causal path; ``a`` itself excluded.

    Undirected edges are ignored.  On a graph with a directed cycle through
    ``a`` the vertex is its own descendant and is reported.
    """
    g._check(a)
    return bits_to_set(descendants_mask(g, a))


def descendants_incl(g: Graph, a: int) -> set[int]:
    return descendants(g, a) | {a}


def ancestors(g: Graph, a: int) -> set[int]:
    g._check(a)
    return bits_to_set(ancestors_mask(g, a))


def ancestors_incl(g: Graph, a: int) -> set[int]:
    return ancestors(g, a) | {a}


def has_directed_cycle(g: Graph) -> bool:
    try:
        _kahn(g)
    except NotADAGError:
        return True
    return False


def is_dag(g: Graph) -> bool:
    if any(g.undirected_mask(v) for v in range(g.n)):
        return False
    return not has_directed_cycle(g)


def _kahn(g: Graph) -> list[int]:
    # Kahn's algorithm over directed edges, smallest available index first.
    indeg = [g.parents_mask(v).bit_count() for v in range(g.n)]
    heap = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for c in iter_bits(g.children_mask(v)):
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(heap, c)
    if len(order) != g.n:
        raise NotADAGError("graph has a directed cycle")
    return order


def topological_order(g: Graph) -> list[int]:
    """Topological order of a DAG; ties broken by ascending vertex index."""
    if not is_dag(g):
        raise NotADAGError("topological order requires a DAG")
    return _kahn(g)


def skeleton(g: Graph) -> Graph:
    return Graph(g.n, [g.adj_mask(v) for v in range(g.n)], g.names)


def v_structures(g: Graph) -> set[tuple[frozenset[int], int]]:
    """Triples ``a -> c <- b`` with ``a`` and ``b`` nonadjacent.

    Returned as ``(frozenset({a, b}), c)``.
    """
    out = set()
    for c in range(g.n):
        pa = g.parents_mask(c)
        for a in iter_bits(pa):
            for b in iter_bits(pa & ~g.adj_mask(a) & ~((1 << (a + 1)) - 1)):
                out.add((frozenset((a, b)), c))
    return out


def count_v_structures(g: Graph) -> int:
    total = 0
    for c in range(g.n):
        pa = g.parents_mask(c)
        for a in iter_bits(pa):
            total += (pa & ~g.adj_mask(a) & ~((1 << (a + 1)) - 1)).bit_count()
    return total


# text format


def parse_graph(text: str) -> Graph:
    """Parse the line-based graph format.

    ::

        vars a b c
        a -> b
        b -- c

    ``#`` starts a comment.  Unknown names, duplicate edges and self-loops
    are errors.
    """
    names: list[str] | None = None
    index: dict[str, int] = {}
    arcs: list[tuple[int, int]] = []
    seen: set[frozenset[int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if names is None:
            if tokens[0] != "vars":
                raise GraphError(f"line {lineno}: expected 'vars' header")
            names = tokens[1:]
            if len(set(names)) != len(names):
                raise GraphError(f"line {lineno}: duplicate vertex name")
            index = {name: i for i, name in enumerate(names)}
            continue
        if len(tokens) != 3 or tokens[1] not in ("->", "--"):
            raise GraphError(f"line {lineno}: expected '<a> -> <b>' or '<a> -- <b>'")
        try:
            a, b = index[tokens[0]], index[tokens[2]]
        except KeyError as exc:
            raise GraphError(f"line {lineno}: unknown vertex {exc.args[0]!r}") from None
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at {tokens[0]!r}")
        key = frozenset((a, b))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge between {tokens[0]!r} and {tokens[2]!r}")
        seen.add(key)
        arcs.append((a, b))
        if tokens[1] == "--":
            arcs.append((b, a))
    if names is None:
        raise GraphError("missing 'vars' header")
    return Graph.from_arcs(len(names), arcs, names)


def format_graph(g: Graph) -> str:
    names = g.names if g.names is not None else [str(v) for v in range(g.n)]
    lines = ["vars " + " ".join(names)]
    edges = [(a, b, "->") for a, b in g.directed_edges()]
    edges += [(a, b, "--") for a, b in g.undirected_edges()]
    for a, b, op in sorted(edges):
        lines.append(f"{names[a]} {op} {names[b]}")
    return "\n".join(lines) + "\n"
