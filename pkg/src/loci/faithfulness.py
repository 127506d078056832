"""Brute-force ground truth for small vertex sets.

Everything here works by definition rather than by the learning algorithm:
k-faithfulness is checked by reading every d-separation of order at most k
off the candidate DAG, the faithful family is found by enumerating all DAGs,
and the representation is the union of the family's arcs.  The module also
holds the representability decision and the boundary-based algorithm for
marginal independencies.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import product

from .ci import CISet, conditioning_sets, separations_given
from .engine import Representation, k_partial_graph, loci_trace, run_loci
from .graph import Graph, GraphError, has_directed_cycle, is_dag, iter_bits, v_structures
from .meek import consistent_extension, cpdag_of

DEFAULT_N_LIMIT = 5
SIGNATURE_INDEX_MAX_N = 5


@dataclass(frozen=True)
class FaithfulFamily:
    members: tuple[Graph, ...]
    k: int
    n: int

    def __len__(self) -> int:
        return len(self.members)

    def maximal_members(self) -> tuple[Graph, ...]:
        """Members with the largest number of edges."""
        if not self.members:
            return ()
        top = max(m.num_adjacencies() for m in self.members)
        return tuple(m for m in self.members if m.num_adjacencies() == top)


def is_k_faithful(d: Graph, s: CISet) -> bool:
    """True iff the d-separations of ``d`` with ``|Z| <= s.k`` are exactly ``s``."""
    if d.n != s.n:
        raise GraphError(f"DAG has {d.n} vertices but the CI set has {s.n}")
    if not is_dag(d):
        raise GraphError("k-faithfulness is defined for DAGs")
    return _faithful(d, s)


def _faithful(d: Graph, s: CISet) -> bool:
    groups = s.by_conditioning_set
    seen = 0
    for z in conditioning_sets(d.n, s.k):
        got = separations_given(d, z)
        want = groups.get(z, frozenset())
        if len(got) != len(want) or not want.issuperset(got):
            return False
        seen += len(want)
    # statements whose conditioning set was never visited would be malformed
    return seen == len(s.statements)


def _arc_code(g: Graph) -> int:
    n = g.n
    return sum(1 << (a * n + b) for a, b in g.arcs())


@lru_cache(maxsize=8)
def all_dags(n: int) -> tuple[Graph, ...]:
    """Every labelled DAG on ``n`` vertices, by ascending arc bitmask."""
    return tuple(_dags_within(Graph.complete_undirected(n)))


def _dags_within(skel: Graph) -> list[Graph]:
    """DAGs whose adjacencies are a subset of ``skel``'s, by ascending arc bitmask."""
    n = skel.n
    pairs = skel.adjacencies()
    dags = []
    for choice in product((0, 1, 2), repeat=len(pairs)):
        out = [0] * n
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                out[a] |= 1 << b
            elif c == 2:
                out[b] |= 1 << a
        g = Graph(n, out)
        if not has_directed_cycle(g):
            dags.append(g)
    dags.sort(key=_arc_code)
    return dags


@lru_cache(maxsize=16)
def _dags_by_signature(n: int, k: int) -> dict[frozenset, tuple[Graph, ...]]:
    # full order-<=k separation set of every DAG; affordable for n <= SIGNATURE_INDEX_MAX_N
    index: dict[frozenset, list[Graph]] = {}
    for d in all_dags(n):
        sig = frozenset(st for z in conditioning_sets(n, k) for st in separations_given(d, z))
        index.setdefault(sig, []).append(d)
    return {sig: tuple(ds) for sig, ds in index.items()}


def _check_limit(n: int, n_limit: int) -> None:
    if n > n_limit:
        raise ValueError(f"brute-force enumeration over {n} vertices exceeds the limit of {n_limit}")


def enumerate_faithful(s: CISet, n_limit: int = DEFAULT_N_LIMIT) -> FaithfulFamily:
    """All DAGs k-faithful to ``s``, in ascending arc-bitmask order.

    Up to five vertices every DAG's separation set is tabulated once and the
    family is a table lookup.  Above that, only DAGs inside the k-partial
    graph are candidates (separated pairs cannot be adjacent) and each is
    checked in full, so the cost grows as 3^(edges of that graph).
    """
    _check_limit(s.n, n_limit)
    n = s.n
    if n <= SIGNATURE_INDEX_MAX_N:
        members = _dags_by_signature(n, min(s.k, max(n - 2, 0))).get(s.statements, ())
        return FaithfulFamily(tuple(d.with_names(s.names) for d in members), s.k, n)
    members = tuple(d.with_names(s.names) for d in _dags_within(k_partial_graph(s)) if _faithful(d, s))
    return FaithfulFamily(members, s.k, n)


def representation_of(family: FaithfulFamily) -> Graph | None:
    """Minimal PDAG containing every member: the union of their arcs."""
    if not family.members:
        return None
    out = [0] * family.n
    for d in family.members:
        for v in range(family.n):
            out[v] |= d.out_mask(v)
    return Graph(family.n, out, family.members[0].names)


def brute_force_representation(s: CISet, n_limit: int = DEFAULT_N_LIMIT) -> Graph | None:
    return representation_of(enumerate_faithful(s, n_limit))


def all_consistent_extensions(g: Graph) -> list[Graph]:
    """Every consistent extension of ``g``, by trying all orientations of its undirected edges."""
    und = g.undirected_edges()
    vs = v_structures(g)
    found = []
    for flips in product((False, True), repeat=len(und)):
        drop = [(b, a) if not f else (a, b) for (a, b), f in zip(und, flips)]
        d = g.without_arcs(drop)
        if is_dag(d) and v_structures(d) == vs:
            found.append(d)
    return found


def decide_representable(s: CISet) -> tuple[bool, Representation]:
    """Run LOCI and check that its output is a CPDAG whose extension is k-faithful to ``s``.

    All consistent extensions of a CPDAG are Markov equivalent and so share
    their d-separations; checking one of them is enough.
    """
    rep = run_loci(s)
    ext = consistent_extension(rep.graph)
    ok = ext is not None and cpdag_of(ext) == rep.graph and is_k_faithful(ext, s)
    return ok, replace(rep, representable=ok)


def _require_k0(s: CISet) -> None:
    if s.k != 0:
        raise ValueError(f"the boundary algorithm takes marginal independencies only (k = 0), got k = {s.k}")


def boundary_algorithm_k0(s: CISet) -> Graph:
    """Orient each marginal-dependence edge ``u - v`` by comparing closed neighbourhoods.

    ``Bd(u)`` strictly inside ``Bd(v)`` gives ``u -> v``, equal boundaries
    give ``u - v``, incomparable boundaries give no edge.
    """
    _require_k0(s)
    n = s.n
    nbr = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if not s.independent(a, b, ()):
                nbr[a] |= 1 << b
                nbr[b] |= 1 << a
    bd = [nbr[v] | 1 << v for v in range(n)]
    out = [0] * n
    for u in range(n):
        for v in iter_bits(nbr[u]):
            if bd[u] & ~bd[v] == 0:
                # Bd(u) is a subset of Bd(v); equal boundaries put arcs both ways
                out[u] |= 1 << v
    return Graph(n, out, s.names)


def check_k0_equivalence(s: CISet) -> bool:
    """Boundary algorithm and LOCI agree, and the Meek stage oriented nothing."""
    _require_k0(s)
    trace = loci_trace(s)
    return boundary_algorithm_k0(s) == trace.final and trace.oriented == trace.final
