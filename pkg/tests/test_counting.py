import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqgraph.counting import (
    BudgetExceeded,
    CountError,
    CountJob,
    PolySystem,
    affine_projective_swap,
    c2_invariant,
    count_affine,
    count_multilinear,
    count_projective_complement,
    graph_nbar,
    merge_shards,
    projective_size,
    quartic_nbar,
    read_system,
    result4_scan,
    solve_k,
)
from fqgraph.gf import field_of_order
from fqgraph.graphs import complete_graph, cycle_graph, wheel_graph
from fqgraph.polynomials import SparsePoly, dual_polynomial, graph_polynomial

x = SparsePoly.var


def test_affine_examples():
    line = PolySystem.of([x(1) + x(2)], "affine")
    assert count_affine(line, 5) == 5
    circle = PolySystem.of([x(1) ** 2 + x(2) ** 2 - 1], "affine")
    assert count_affine(circle, 5) == 4  # q - chi(-1) with -1 a square mod 5
    assert count_affine(circle, 7) == 8
    assert count_affine(PolySystem.of([x(1) * x(2) - 1], "affine"), 9) == 8


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_c3_counts(q):
    for f in (graph_polynomial(cycle_graph(3)), dual_polynomial(cycle_graph(3))):
        sys = PolySystem.of([f])
        assert count_projective_complement(sys, q) == q * q
        assert count_projective_complement(sys, q, method="affine") == q * q
        assert count_multilinear(sys, q) == q * q


def test_k4_and_wheel():
    for q in (2, 3, 4):
        assert graph_nbar(complete_graph(4), q) == q**5 - q**2
        assert graph_nbar(wheel_graph(4), q) == q**7 - 3 * q**4 + 3 * q**3 - q**2
    assert graph_nbar(complete_graph(4), 3, method="charts") == 234


def _random_multilinear(rng, nvars):
    out = []
    for _ in range(rng.randint(1, 2)):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            mono = tuple(sorted(rng.sample(range(1, nvars + 1), rng.randint(0, 3))))
            terms[mono] = rng.randint(-2, 2)
        out.append(SparsePoly(terms))
    return out


def test_multilinear_matches_enumeration():
    rng = random.Random(7)
    for _ in range(60):
        polys = _random_multilinear(rng, 5)
        sys = PolySystem(tuple(polys), (1, 2, 3, 4, 5), "affine")
        for q in (2, 3, 4, 5):
            assert count_multilinear(sys, q) == count_affine(sys, q)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.sampled_from([2, 3, 4, 5]))
def test_shards_partition(k, q):
    sys = PolySystem.of([x(1) * x(2) + x(3) * x(4) + 1, x(1) + x(4) ** 2], "affine")
    full = count_affine(sys, q)
    assert sum(count_affine(sys, q, shard=(i, k)) for i in range(k)) == full


def test_merge_shards():
    sys = PolySystem.of([graph_polynomial(complete_graph(4))])
    F = field_of_order(3)
    parts = [CountJob(sys, F, (i, 3)).run() for i in range(3)]
    merged = merge_shards(parts, sys)
    assert merged["Nbar"] == 234 == CountJob(sys, F).run()["Nbar"]
    with pytest.raises(CountError):
        merge_shards(parts[:2], sys)
    with pytest.raises(CountError):
        merge_shards(parts + parts[:1], sys)


def test_budget():
    sys = PolySystem.of([graph_polynomial(complete_graph(4))], "affine")
    with pytest.raises(BudgetExceeded) as err:
        count_affine(sys, 5, budget=100)
    assert err.value.shards_needed > 1 and "100" in str(err.value)


def test_swap_decomposition():
    psi = graph_polynomial(wheel_graph(4))
    sys = PolySystem.of([psi])
    boundary, chart = affine_projective_swap(sys, 1)
    for q in (2, 3):
        lhs = count_projective_complement(sys, q)
        assert lhs == count_projective_complement(boundary, q) + q**chart.n - count_affine(chart, q)


def test_projective_requires_homogeneous():
    with pytest.raises(CountError):
        count_projective_complement(PolySystem.of([x(1) + 1]), 3)
    with pytest.raises(CountError):
        PolySystem((x(5),), (1, 2))


def test_read_system():
    sys = read_system("vars x1 x2 x3\n# the line\nx1 + x2 + x3\n")
    assert sys.n == 3 and count_projective_complement(sys, 4) == 16
    assert read_system("ambient affine\nx1*x2 - 1").ambient == "affine"


def test_projective_size():
    assert projective_size(3, 2) == 7 and projective_size(0, 5) == 0


def test_c2():
    for q in (2, 3, 5):
        r = c2_invariant(complete_graph(4), q)
        assert r.full == r.vertex == (-1) % q
    assert c2_invariant(wheel_graph(4), 3).value == (-1) % 3


def test_quartic_methods_agree():
    for p in (3, 5, 7, 11, 13):
        assert quartic_nbar(p, "enumerate") == quartic_nbar(p, "fibres")


def test_result4_small():
    rows = result4_scan(50)
    assert all(r.ok for r in rows)
    assert {r.p for r in rows if r.k == 0} == {p for p in (3, 5, 7, 13, 17, 19, 31, 41, 47)}
    assert solve_k(29, 28 % 29) == 1


def _dual_minor_sum(g, q):
    """Sum over forests T and disjoint edge sets S of (-1)^|S| times the dual
    complement count of the minor with T contracted and S deleted."""
    import itertools

    from fqgraph.graphs import GraphError, Multigraph, cycle_rank, minor

    labels = sorted(g.labels)
    total = 0
    for r in range(len(labels) + 1):
        for T in itertools.combinations(labels, r):
            if T and cycle_rank(Multigraph(g.vertex_count, tuple(g.edge_map[e] for e in T), T)):
                continue
            rest = [e for e in labels if e not in T]
            for s in range(len(rest) + 1):
                for S in itertools.combinations(rest, s):
                    left = tuple(e for e in rest if e not in S)
                    if not left:
                        continue
                    try:
                        d = dual_polynomial(minor(g, deleted=S, contracted=T))
                    except GraphError:
                        d = SparsePoly()  # no spanning tree
                    total += (-1) ** s * count_projective_complement(PolySystem((d,), left), q)
    return total


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_dual_minor_sum(q):
    from fqgraph.graphs import Multigraph, cycle_graph

    for g in (cycle_graph(3), cycle_graph(4), Multigraph(3, ((0, 1), (0, 1), (1, 2), (1, 2)))):
        assert _dual_minor_sum(g, q) == graph_nbar(g, q)


def test_dual_minor_sum_k4():
    assert _dual_minor_sum(complete_graph(4), 3) == 234
