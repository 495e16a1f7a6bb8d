import random

import networkx as nx
import pytest

from fqgraph.graphs import (
    GraphError,
    MinorSpec,
    Multigraph,
    bubble_graph,
    complete_graph,
    connected_simple_graphs,
    corpus,
    cycle_graph,
    cycle_rank,
    graph_from_json,
    graph_to_json,
    graph_to_text,
    matrix_tree_count,
    minor,
    parse_graph_text,
    path_graph,
    random_connected_simple_graph,
    spanning_trees,
    structural_probe,
    wheel_graph,
)


def test_cycle_rank_basic():
    assert cycle_rank(cycle_graph(3)) == 1
    assert cycle_rank(path_graph(5)) == 0
    assert cycle_rank(complete_graph(4)) == 3


def test_minor_delete_and_contract_c3():
    c3 = cycle_graph(3)
    d = minor(c3, MinorSpec(deleted=frozenset({1})))
    assert d.n == 2 and cycle_rank(d) == 0
    c = minor(c3, contracted=(1,))
    assert c.n == 2 and c.vertex_count == 2
    assert c.endpoints(2) in ((0, 1), (1, 0)) and set(c.endpoints(2)) == set(c.endpoints(3))
    assert sorted(c.labels) == [2, 3]


def test_minor_k4_contraction_keeps_double_edge():
    k = minor(complete_graph(4), contracted=(1,))
    assert (k.vertex_count, k.n) == (3, 5)
    assert not structural_probe(k).is_simple


def test_minor_errors():
    with pytest.raises(GraphError):
        minor(cycle_graph(3), deleted=(9,))
    loop = Multigraph(1, ((0, 0),))
    with pytest.raises(GraphError):
        minor(loop, contracted=(1,))


def test_spanning_trees_c3_and_k4():
    assert set(spanning_trees(cycle_graph(3))) == {frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})}
    assert spanning_trees(path_graph(2)) == [frozenset({1, 2})]
    assert len(spanning_trees(complete_graph(4))) == 16 == matrix_tree_count(complete_graph(4))


def test_spanning_trees_disconnected():
    with pytest.raises(GraphError):
        spanning_trees(Multigraph(4, ((0, 1), (2, 3))))


def test_tree_count_matches_determinant_random():
    rng = random.Random(5)
    for _ in range(40):
        v = rng.randint(3, 8)
        m = rng.randint(v - 1, min(v * (v - 1) // 2, 12))
        g = random_connected_simple_graph(rng, m, v)
        trees = spanning_trees(g)
        assert len(trees) == len(set(trees)) == matrix_tree_count(g)
        for t in trees:
            assert len(t) == v - 1


def test_deletion_contraction_commute():
    g = wheel_graph(4)
    for e, f in [(1, 2), (3, 7), (2, 8)]:
        a = minor(minor(g, deleted=(e,)), contracted=(f,))
        b = minor(minor(g, contracted=(f,)), deleted=(e,))
        assert sorted(a.labels) == sorted(b.labels)
        assert nx.is_isomorphic(_nx(a), _nx(b))


def _nx(g):
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


def test_cycle_rank_under_minors():
    g = complete_graph(4)
    for e in g.labels:
        assert cycle_rank(minor(g, deleted=(e,))) == cycle_rank(g) - 1
        assert cycle_rank(minor(g, contracted=(e,))) == cycle_rank(g)


def test_structural_probe_examples():
    p = structural_probe(complete_graph(4))
    assert p.is_simple and p.vertex_connectivity_ge_2
    assert len(p.three_valent_vertices) == 4 and p.triangles_at_3valent
    assert not structural_probe(bubble_graph()).is_simple
    bowtie = Multigraph(5, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)))
    assert not structural_probe(bowtie).vertex_connectivity_ge_2


def test_triangle_records_are_triangles():
    for g in (complete_graph(4), wheel_graph(5)):
        for v, (e1, e2, e3, e4) in structural_probe(g).triangles_at_3valent:
            ends = [set(g.endpoints(e)) for e in (e1, e2, e3)]
            assert all(v in s for s in ends)
            tri = set(g.endpoints(e2)) | set(g.endpoints(e3))
            assert set(g.endpoints(e4)) == tri - {v}


def test_text_and_json_round_trip():
    g = wheel_graph(4)
    assert parse_graph_text(graph_to_text(g)).edges == g.edges
    assert graph_from_json(graph_to_json(g)).edges == g.edges
    with pytest.raises(GraphError):
        parse_graph_text("v 2\n0 5\n")


def test_exhaustive_counts_small():
    # connected graphs with 1..5 edges: 1, 1, 3, 5, 12 (sequence A002905)
    by_edges = {}
    for g in connected_simple_graphs(5):
        by_edges[g.n] = by_edges.get(g.n, 0) + 1
    assert [by_edges[k] for k in range(1, 6)] == [1, 1, 3, 5, 12]


def test_corpus_deterministic():
    a = corpus(size=60, max_edges=10, exhaustive_edges=5)
    b = corpus(size=60, max_edges=10, exhaustive_edges=5)
    assert [g.edges for g in a] == [g.edges for g in b]
    assert len(a) == 60 and max(g.n for g in a) <= 10
