import itertools
import random

import pytest
from hypothesis import given, settings

from loci.ci import generate_from_dag
from loci.engine import loci_trace
from loci.faithfulness import all_consistent_extensions
from loci.graph import Graph, NotADAGError, skeleton, v_structures
from loci.meek import consistent_extension, cpdag_of, is_cpdag, meek_closure, pattern_of

from .conftest import dags, random_dag

A, B, C, D = range(4)
STAGE2 = Graph.from_edges(4, directed=[(C, B), (D, B)], undirected=[(A, B), (A, C), (A, D)])
STAGE3 = Graph.from_edges(4, directed=[(A, B), (C, B), (D, B)], undirected=[(A, C), (A, D)])


def single_ci_dags():
    # the six maximal DAGs: c -> b <- d, a -> b, plus the orientations of a - c and a - d
    # that add no v-structure
    base = [(A, B), (C, B), (D, B)]
    out = []
    for ac, ad in [((A, C), (A, D)), ((C, A), (A, D)), ((A, C), (D, A))]:
        out.append(Graph.from_arcs(4, base + [ac, ad]))
    return out


def test_rule_one():
    g = Graph.from_edges(3, directed=[(0, 1)], undirected=[(1, 2)])
    assert meek_closure(g) == Graph.from_arcs(3, [(0, 1), (1, 2)])


def test_rule_two():
    g = Graph.from_edges(3, directed=[(0, 1), (1, 2)], undirected=[(0, 2)])
    assert meek_closure(g) == Graph.from_arcs(3, [(0, 1), (1, 2), (0, 2)])


def test_rule_three_on_stage2():
    assert meek_closure(STAGE2) == STAGE3


def test_closure_keeps_dags(six_dag):
    assert meek_closure(six_dag) == six_dag


def test_closure_rejects_cycles():
    with pytest.raises(NotADAGError):
        meek_closure(Graph.from_arcs(3, [(0, 1), (1, 2), (2, 0)]))


def test_consistent_extension_examples(six_dag):
    ext = consistent_extension(STAGE3)
    assert ext is not None
    assert any(ext == m for m in single_ci_dags())
    assert consistent_extension(six_dag) == six_dag
    tri = consistent_extension(Graph.complete_undirected(3))
    assert tri is not None and not v_structures(tri) and skeleton(tri) == Graph.complete_undirected(3)


def test_no_extension_for_chordless_cycle():
    cyc = Graph.from_edges(4, undirected=[(0, 1), (1, 2), (2, 3), (3, 0)])
    assert consistent_extension(cyc) is None
    assert all_consistent_extensions(cyc) == []


def test_is_cpdag_examples():
    assert is_cpdag(STAGE3)
    assert not is_cpdag(Graph.from_arcs(2, [(0, 1)]))
    assert is_cpdag(Graph.from_edges(2, undirected=[(0, 1)]))
    assert not is_cpdag(STAGE2)


def test_cpdag_of_examples(six_dag):
    collider = Graph.from_arcs(3, [(0, 1), (2, 1)])
    assert cpdag_of(collider) == collider
    assert cpdag_of(Graph.from_arcs(3, [(0, 1), (1, 2)])) == Graph.from_edges(3, undirected=[(0, 1), (1, 2)])
    assert cpdag_of(six_dag) == six_dag
    assert pattern_of(six_dag) == six_dag


def test_extension_matches_brute_force_list():
    rng = random.Random(11)
    for _ in range(200):
        d = random_dag(rng, rng.randint(1, 5))
        c = cpdag_of(d)
        exts = all_consistent_extensions(c)
        assert d in exts
        assert consistent_extension(c) in exts
        for e in exts:
            assert cpdag_of(e) == c


@settings(max_examples=200)
@given(dags(max_n=7))
def test_cpdag_properties(d):
    c = cpdag_of(d)
    assert is_cpdag(c)
    ext = consistent_extension(c)
    assert ext is not None
    assert skeleton(ext) == skeleton(d)
    assert v_structures(ext) == v_structures(d)
    assert cpdag_of(ext) == c
    assert meek_closure(c) == c


def _random_pdag(rng, n):
    # undirect a random subset of a DAG's edges; keep only extensible results,
    # the class on which the rules are sound
    while True:
        d = random_dag(rng, n)
        out = [d.out_mask(v) for v in range(n)]
        for x, y in d.directed_edges():
            if rng.random() < 0.6:
                out[y] |= 1 << x
        g = Graph(n, out)
        if consistent_extension(g) is not None:
            return g


def test_closure_is_extensive_and_idempotent():
    rng = random.Random(12)
    for _ in range(300):
        g = _random_pdag(rng, rng.randint(2, 7))
        m = meek_closure(g)
        assert skeleton(m) == skeleton(g)
        for x, y in g.directed_edges():
            assert m.has_arc(x, y) and not m.has_arc(y, x)
        assert meek_closure(m) == m
        assert meek_closure(g, rng=rng) == m
        assert set(all_consistent_extensions(m)) == set(all_consistent_extensions(g))


def test_stage2_extensions_survive_closure():
    rng = random.Random(13)
    for _ in range(150):
        d = random_dag(rng, rng.randint(2, 5))
        s = generate_from_dag(d, rng.randint(0, d.n - 2))
        t = loci_trace(s)
        assert set(all_consistent_extensions(t.oriented)) == set(all_consistent_extensions(t.final))
