"""d-separation on DAGs.

:func:`d_separated` is the production route: mark every vertex that is in
``Z`` or has a descendant in ``Z``, then walk (vertex, arrival direction)
states from ``a``.  :func:`d_separated_bruteforce` enumerates simple paths and
applies the two blocking clauses literally; it exists to check the former.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .graph import Graph, GraphError, NotADAGError, descendants_mask, is_dag, iter_bits, mask_of


@dataclass(frozen=True)
class SeparationQuery:
    a: int
    b: int
    z: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "z", frozenset(self.z))
        if self.a == self.b:
            raise GraphError("query endpoints must differ")
        if self.a in self.z or self.b in self.z:
            raise GraphError("query endpoints may not be in the conditioning set")

    def check(self, n: int) -> None:
        for v in (self.a, self.b, *self.z):
            if not 0 <= v < n:
                raise GraphError(f"vertex {v} out of range 0..{n - 1}")


def ancestral_mask(d: Graph, zmask: int) -> int:
    """``Z`` together with all ancestors of members of ``Z``."""
    seen = zmask
    frontier = zmask
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= d.par[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def d_connected_mask(d: Graph, a: int, zmask: int, anc: int | None = None) -> int:
    """Bitmask of all vertices d-connected to ``a`` given ``Z`` (``a`` and ``Z`` excluded).

    No validation; ``d`` must be a DAG and ``a`` must not be in ``Z``.
    ``anc`` may pass a precomputed :func:`ancestral_mask` of ``Z``.
    """
    if anc is None:
        anc = ancestral_mask(d, zmask)
    parents = d.par
    children = d.chi
    # up: reached from a child (travelling against the arrow)
    # down: reached from a parent (travelling along the arrow)
    up_seen = up_front = 1 << a
    down_seen = down_front = 0
    while up_front or down_front:
        nxt_up = nxt_down = 0
        f = up_front & ~zmask
        while f:
            low = f & -f
            v = low.bit_length() - 1
            nxt_up |= parents[v]
            nxt_down |= children[v]
            f ^= low
        f = down_front
        while f:
            low = f & -f
            v = low.bit_length() - 1
            if not zmask & low:
                nxt_down |= children[v]
            if anc & low:
                nxt_up |= parents[v]
            f ^= low
        up_front = nxt_up & ~up_seen
        down_front = nxt_down & ~down_seen
        up_seen |= up_front
        down_seen |= down_front
    return (up_seen | down_seen) & ~zmask & ~(1 << a)


def _validate(d: Graph, q: SeparationQuery) -> None:
    if not is_dag(d):
        raise NotADAGError("d-separation is defined here for DAGs only")
    q.check(d.n)


def d_separated(d: Graph, q: SeparationQuery) -> bool:
    _validate(d, q)
    zmask = mask_of(q.z)
    return not d_connected_mask(d, q.a, zmask) >> q.b & 1


def is_d_separated(d: Graph, a: int, b: int, z: Iterable[int] = ()) -> bool:
    return d_separated(d, SeparationQuery(a, b, frozenset(z)))


def d_separated_bruteforce(d: Graph, q: SeparationQuery) -> bool:
    """Check every simple path between ``q.a`` and ``q.b`` for a blocking node."""
    _validate(d, q)
    z = q.z
    desc = {v: descendants_mask(d, v) for v in range(d.n)}
    zmask = mask_of(z)

    def blocked(path: list[int]) -> bool:
        for i in range(1, len(path) - 1):
            u, v, w = path[i - 1], path[i], path[i + 1]
            collider = d.has_arc(u, v) and d.has_arc(w, v)
            if not collider and v in z:
                return True
            if collider and v not in z and not desc[v] & zmask:
                return True
        return False

    path = [q.a]
    on_path = {q.a}

    def search(v: int) -> bool:
        # True when an unblocked path was found
        for w in iter_bits(d.adj_mask(v)):
            if w in on_path:
                continue
            path.append(w)
            if w == q.b:
                if not blocked(path):
                    return True
            else:
                on_path.add(w)
                if search(w):
                    return True
                on_path.discard(w)
            path.pop()
        return False

    return not search(q.a)
