"""Meek-rule closure, consistent extensions and CPDAG checks."""

from __future__ import annotations

import random

from .graph import Graph, NotADAGError, has_directed_cycle, is_dag, iter_bits, v_structures


def _rule_fires(out: list[int], inn: list[int], x: int, y: int) -> bool:
    """Does one of the three rules orient the undirected edge ``x - y`` into ``x -> y``?"""

    def adj(v):
        return out[v] | inn[v]

    def par(v):
        return inn[v] & ~out[v]

    # rule 1: w -> x - y, w and y nonadjacent
    if par(x) & ~adj(y) & ~(1 << y):
        return True
    # rule 2: x -> w -> y
    child_x = out[x] & ~inn[x]
    if child_x & par(y):
        return True
    # rule 3: x - c -> y and x - d -> y with c, d nonadjacent
    cands = out[x] & inn[x] & par(y)
    for c in iter_bits(cands):
        if cands & ~adj(c) & ~(1 << c):
            return True
    return False


def meek_closure(g: Graph, *, validate: bool = True, rng: random.Random | None = None) -> Graph:
    """Apply the three Meek rules until none fires.

    Orienting ``a - b`` into ``a -> b`` deletes the stored arc ``b -> a``.
    Undirected edges are swept in ascending order; passing ``rng`` shuffles
    the sweep order on every pass (used to test that the fixpoint does not
    depend on scheduling).  ``validate=False`` skips the directed-cycle check
    for callers that feed graphs of unknown shape.
    """
    if validate and has_directed_cycle(g):
        raise NotADAGError("Meek closure needs a PDAG; the directed part has a cycle")
    n = g.n
    out = [g.out_mask(v) for v in range(n)]
    inn = [g.in_mask(v) for v in range(n)]
    changed = True
    while changed:
        changed = False
        cands = [(x, y) for x in range(n) for y in iter_bits(out[x] & inn[x])]
        if rng is not None:
            rng.shuffle(cands)
        for x, y in cands:
            if not (out[x] >> y & 1 and out[y] >> x & 1):
                continue
            if _rule_fires(out, inn, x, y):
                out[y] &= ~(1 << x)
                inn[x] &= ~(1 << y)
                changed = True
    return Graph(n, out, g.names)


def consistent_extension(g: Graph) -> Graph | None:
    """A DAG with the skeleton, directed edges and v-structures of ``g``, or None.

    Repeatedly removes the lowest-index vertex that has no outgoing directed
    edge among the remaining vertices and whose undirected neighbours are
    adjacent to all its other neighbours, orienting its undirected edges
    towards it.
    """
    n = g.n
    out = [g.out_mask(v) for v in range(n)]
    remaining = (1 << n) - 1
    for _ in range(n):
        for x in iter_bits(remaining):
            und = g.undirected_mask(x) & remaining
            if g.children_mask(x) & remaining:
                continue
            nbrs = g.adj_mask(x) & remaining
            if all(nbrs & ~(1 << y) & ~g.adj_mask(y) == 0 for y in iter_bits(und)):
                break
        else:
            return None
        for y in iter_bits(und):
            out[x] &= ~(1 << y)
        remaining &= ~(1 << x)
    d = Graph(n, out, g.names)
    if not is_dag(d) or v_structures(d) != v_structures(g):
        return None
    return d


def pattern_of(d: Graph) -> Graph:
    """Skeleton of ``d`` with exactly the v-structure edges directed."""
    if not is_dag(d):
        raise NotADAGError("pattern is defined for DAGs")
    out = [d.adj_mask(v) for v in range(d.n)]
    for b in range(d.n):
        pa = d.parents_mask(b)
        for a in iter_bits(pa):
            if pa & ~d.adj_mask(a) & ~(1 << a):
                out[b] &= ~(1 << a)
    return Graph(d.n, out, d.names)


def cpdag_of(d: Graph) -> Graph:
    return meek_closure(pattern_of(d))


def is_cpdag(g: Graph) -> bool:
    ext = consistent_extension(g)
    return ext is not None and cpdag_of(ext) == g
