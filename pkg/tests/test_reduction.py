import pytest

from fqgraph.counting import PolySystem, count_affine, count_multilinear, count_projective_complement
from fqgraph.graphs import (
    GraphError,
    Multigraph,
    complete_graph,
    cycle_graph,
    primitive_phi4,
    wheel_graph,
)
from fqgraph.interpolation import QPolynomial
from fqgraph.polynomials import SparsePoly, graph_polynomial, quartic_f
from fqgraph.reduction import (
    CountExpression,
    Reducer,
    ReductionError,
    classify_residual,
    cor_shortcuts,
    denominator_reduce,
    denominator_sequence,
    edge_sequence_heuristic,
    eliminate_linear,
    expand_product,
    reduce_system,
    replay,
    rescale,
    run_method1,
    swap_to_affine,
    theorem1_entry,
)

x = SparsePoly.var
Q = QPolynomial.q()
QS = (2, 3, 4, 5)
K4_NBAR = Q**5 - Q**2
W4_NBAR = Q**7 - 3 * Q**4 + 3 * Q**3 - Q**2


def agree(a: CountExpression, b: CountExpression, qs=QS):
    for q in qs:
        assert a.evaluate(q) == b.evaluate(q), q


def single(polys, variables=None, ambient="projective"):
    return CountExpression.single(PolySystem.of(polys, ambient, variables))


def test_expand_product():
    e = single([(x(1) + x(2)) * (x(3) + x(1)) * x(4)])
    out = expand_product(e)
    assert len(out) > 1
    agree(e, out)


def test_eliminate_linear():
    e = single([x(1) * x(2) + x(3) * x(4), x(1) + x(3)])
    agree(e, eliminate_linear(e, 0, 2))
    with pytest.raises(ReductionError):
        eliminate_linear(single([x(1) ** 2 + x(2) ** 2]), 0, 1)


def test_swap_and_rescale():
    f = x(1) * x(2) + x(2) * x(3) + x(3) * x(1)
    e = single([f])
    agree(e, swap_to_affine(e))
    agree(e, rescale(e, 0, (2,), x(3) + 1, SparsePoly.const(1)))
    with pytest.raises(ReductionError):
        rescale(e, 0, (2,), x(3) + x(1), SparsePoly.const(1))
    aff = single([x(1) * x(2) - 1, x(1) + x(3)], ambient="affine")
    agree(aff, rescale(aff, 0, (1,), x(2), SparsePoly.const(1)))


@pytest.mark.parametrize("rule", ["single", "pair", "double", "auto"])
def test_cor_shortcuts(rule):
    psi = graph_polynomial(wheel_graph(4))
    e = single([psi])
    agree(e, cor_shortcuts(e, rule=rule))
    pair = single([x(1) * x(2) + x(3) * x(4), x(1) * x(3) + x(2) * x(4)])
    agree(pair, cor_shortcuts(pair, rule=rule))


@pytest.mark.parametrize("mode", ["vertex", "vertex_alt", "triangle"])
def test_entry_formulas(mode):
    for g, want in ((complete_graph(4), K4_NBAR), (wheel_graph(4), W4_NBAR)):
        expr = theorem1_entry(g, mode)
        for q in (2, 3, 5, 7):
            assert expr.evaluate(q) == want(q)


def test_entry_rejects():
    with pytest.raises(ReductionError):
        theorem1_entry(complete_graph(4), "bogus")
    with pytest.raises(ReductionError):
        theorem1_entry(cycle_graph(4), "vertex")


@pytest.mark.parametrize("mode", ["auto", None, "vertex", "vertex_alt", "triangle"])
def test_method1_small(mode):
    assert run_method1(complete_graph(4), mode=mode).resolved == K4_NBAR
    r = run_method1(wheel_graph(4), mode=mode)
    assert r.fully_resolved and r.resolved == W4_NBAR
    assert all(r.certified.values())


def test_method1_cycle_and_tree():
    assert run_method1(cycle_graph(3)).resolved == Q**2
    tree = Multigraph(4, ((0, 1), (1, 2), (1, 3)))
    assert run_method1(tree).resolved == QPolynomial.projective(3)


def test_method1_rejects():
    with pytest.raises(GraphError):
        run_method1(Multigraph(4, ((0, 1), (2, 3))))
    with pytest.raises(ReductionError):
        run_method1(complete_graph(4), [1, 2, 3])


def test_replay_and_json():
    g = primitive_phi4(6)
    r = run_method1(g, certify=(2,))
    again = replay(g, r.trace, certify=(3,))
    assert again.resolved == r.resolved and len(again.residuals) == len(r.residuals)
    blob = r.to_json()
    assert blob["trace"]["sequence"] == r.trace["sequence"] and "class" in blob


def test_edge_sequence_starts_at_vertex():
    g = wheel_graph(5)
    seq = edge_sequence_heuristic(g)
    assert sorted(seq) == sorted(g.labels)
    dseq = denominator_sequence(g)
    assert sorted(dseq) == sorted(g.labels) and set(dseq[:3]) == {1, 6, 10}
    with pytest.raises(ReductionError):
        denominator_sequence(complete_graph(5))


def test_denominator_reduction_c2():
    for g in (complete_graph(4), wheel_graph(4), wheel_graph(5)):
        seq = denominator_sequence(g)
        res = denominator_reduce(g, seq)
        for q in (2, 3, 5):
            psi = PolySystem((graph_polynomial(g),), tuple(sorted(g.labels)))
            nb = count_multilinear(psi, q)
            assert res.c2(q) == (nb // q**2) % q
    with pytest.raises(ReductionError):
        denominator_reduce(complete_graph(4), [1, 2, 3, 4])


def test_quartic_residual():
    f = quartic_f()
    sys = PolySystem((f,), (1, 2, 3, 4))
    rep = reduce_system(sys)
    for q in (2, 3, 5):
        assert rep.evaluate(q) == count_projective_complement(sys, q)
    kinds = {r.kind for r in rep.residuals}
    assert rep.residuals and kinds <= {"quartic", "other"} | {k for k in kinds if k.startswith("conic")}
    assert classify_residual((f,)) == "quartic"


def test_budget_fallback_still_certifies():
    g = complete_graph(5)
    r = run_method1(g, certify=(2, 3), max_nodes=50)
    assert all(r.certified.values())


def test_reducer_debug_mode():
    red = Reducer(debug=True)
    rep = reduce_system(PolySystem.of([graph_polynomial(complete_graph(4))]), red)
    assert rep.resolved == K4_NBAR


def test_affine_count_expression():
    e = single([x(1) * x(2) - 1], (1, 2), "affine")
    assert e.evaluate(5) == 25 - count_affine(PolySystem.of([x(1) * x(2) - 1], "affine"), 5)


def _theta(*lengths):
    """Two vertices joined by internally disjoint paths of the given lengths."""
    edges, nv = [], 2
    for k in lengths:
        prev = 0
        for _ in range(k - 1):
            edges.append((prev, nv))
            prev, nv = nv, nv + 1
        edges.append((prev, 1))
    return Multigraph(nv, tuple(edges))


@pytest.mark.parametrize("lengths", [(1, 2, 2), (1, 2, 5), (2, 2, 3)])
def test_two_loop_vertex_entry_keeps_origin_slice(lengths):
    g = _theta(*lengths)
    psi = PolySystem((graph_polynomial(g),), tuple(sorted(g.labels)))
    for q in QS:
        want = count_projective_complement(psi, q)
        assert want == q ** (g.n - 1)
        assert theorem1_entry(g, "vertex").evaluate(q) == want
        assert theorem1_entry(g, "vertex_alt").evaluate(q) == want
    assert run_method1(g, certify=(2, 3)).resolved == Q ** (g.n - 1)


def test_triangle_entry_refuses_two_loops():
    with pytest.raises(ReductionError):
        theorem1_entry(_theta(1, 2, 2), "triangle")
