"""The LOCI algorithm.

Stage 1 keeps an undirected edge for every pair that no listed statement
separates.  Stage 2 walks each statement ``(a _||_ b | Z)`` and every third
vertex ``c`` outside ``Z`` that is dependent on both ``a`` and ``b`` given
``Z``, deleting the arcs ``c -> a`` and ``c -> b``.  Stage 3 is the Meek
closure.  The Stage 2 conditions read only the CI set, never the graph being
edited, so the result does not depend on the processing order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .ci import CISet, conditioning_sets
from .graph import Graph
from .meek import meek_closure


@dataclass(frozen=True)
class Representation:
    graph: Graph
    k: int
    source_hash: str
    # None until decide_representable has checked it
    representable: bool | None = None


@dataclass(frozen=True)
class LociTrace:
    partial: Graph
    oriented: Graph
    final: Graph


def _dependence(s: CISet, z: tuple[int, ...], indep: np.ndarray | None) -> np.ndarray:
    dep = np.ones((s.n, s.n), dtype=bool) if indep is None else ~indep
    np.fill_diagonal(dep, False)
    if z:
        zs = list(z)
        dep[zs, :] = False
        dep[:, zs] = False
    return dep


def k_partial_graph(s: CISet) -> Graph:
    """Undirected graph with ``a - b`` unless some listed statement separates them."""
    separated = np.zeros((s.n, s.n), dtype=bool)
    for m in s.independence_matrices.values():
        separated |= m
    arcs = ~separated
    np.fill_diagonal(arcs, False)
    return Graph.from_matrix(arcs, s.names)


def stage2_removals(s: CISet) -> np.ndarray:
    """Bool matrix ``R`` with ``R[c, x]`` set when the arc ``c -> x`` must go.

    ``c -> x`` is removed iff for some ``Z`` and ``y``: ``(x _||_ y | Z)`` is
    listed, ``c`` is outside ``Z``, and ``c`` is dependent on both ``x`` and
    ``y`` given ``Z``.
    """
    removed = np.zeros((s.n, s.n), dtype=bool)
    for z, indep in s.independence_matrices.items():
        dep = _dependence(s, z, indep)
        # hits[c, x] = #{y : dep[c, y] and indep[y, x]}
        hits = dep.astype(np.int32) @ indep.astype(np.int32)
        removed |= dep & (hits > 0)
    return removed


def stage2_remove(g: Graph, s: CISet) -> Graph:
    keep = g.to_matrix() & ~stage2_removals(s)
    return Graph.from_matrix(keep, g.names)


def stage2_remove_literal(g: Graph, s: CISet, rng: random.Random | None = None) -> Graph:
    """Statement-by-statement Stage 2, optionally in a shuffled order.

    Quadratically slower than :func:`stage2_remove`; kept as a readable
    reference and for order-independence checks.
    """
    work = [(st, c) for st in sorted(s.statements) for c in range(s.n) if c not in (st.a, st.b)]
    if rng is not None:
        rng.shuffle(work)
    out = [g.out_mask(v) for v in range(g.n)]
    for st, c in work:
        a, b, z = st.a, st.b, st.z
        if c in z:
            continue
        if not s.independent(a, c, z) and not s.independent(c, b, z):
            out[c] &= ~(1 << a) & ~(1 << b)
    return Graph(g.n, out, g.names)


def _cond_holds(s: CISet, a: int, b: int) -> bool:
    # some u, S with (u _||_ b | S), (u dep a | S), (a dep b | S), a not in S
    for z in conditioning_sets(s.n, s.k, exclude=(a, b)):
        if s.independent(a, b, z):
            continue
        for u in range(s.n):
            if u in (a, b) or u in z:
                continue
            if s.independent(u, b, z) and not s.independent(u, a, z):
                return True
    return False


def incompatible(s: CISet, a: int, b: int) -> bool:
    """Exhaustive witness search for incompatibility of ``a`` and ``b``."""
    if a == b:
        raise ValueError("incompatibility needs two distinct vertices")
    return _cond_holds(s, a, b) and _cond_holds(s, b, a)


def loci_trace(s: CISet) -> LociTrace:
    partial = k_partial_graph(s)
    oriented = stage2_remove(partial, s)
    # input of unknown quality may leave directed cycles; closure still terminates
    final = meek_closure(oriented, validate=False)
    return LociTrace(partial, oriented, final)


def run_loci(s: CISet) -> Representation:
    """Run all three stages.

    For a DAG-representable ``s`` the result is the CPDAG representing every
    k-faithful DAG.  Otherwise a graph is still returned but carries no
    guarantee; see :func:`loci.faithfulness.decide_representable`.
    """
    return Representation(loci_trace(s).final, s.k, s.digest)
