import json
import os
import subprocess
import sys

import numpy as np

from fqgraph import _kernels
from fqgraph.counting import PolySystem, count_affine
from fqgraph.gf import field_of_order
from fqgraph.graphs import wheel_graph
from fqgraph.polynomials import graph_polynomial

PROBE = r"""
import json
from fqgraph import _kernels
from fqgraph.counting import PolySystem, count_affine, quartic_nbar
from fqgraph.fqft import TheoryConfig, amplitude
from fqgraph.graphs import theta_graph, wheel_graph
from fqgraph.polynomials import graph_polynomial
g = wheel_graph(4)
s = PolySystem((graph_polynomial(g),), tuple(sorted(g.labels)), "affine")
print(json.dumps({"backend": _kernels.backend(), "v": [count_affine(s, 3), count_affine(s, 4),
      quartic_nbar(31, "fibres"), amplitude(theta_graph(), TheoryConfig(2), 5).value]}))
"""


def _probe(no_numba):
    env = dict(os.environ)
    env.pop("FQGRAPH_NO_NUMBA", None)
    if no_numba:
        env["FQGRAPH_NO_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def test_backends_agree():
    a, b = _probe(False), _probe(True)
    assert b["backend"] == "numpy"
    assert a["v"] == b["v"]


def test_numpy_path_in_process():
    g = wheel_graph(4)
    s = PolySystem((graph_polynomial(g),), tuple(sorted(g.labels)), "affine")
    F = field_of_order(4)
    want = count_affine(s, F)
    from fqgraph.counting import _field_tables, _pow_table, compile_system

    comp = compile_system(s.polys, s.variables, F)
    add, mul = _field_tables(F)
    powt = _pow_table(F, int(comp.exps.max()))
    got = _kernels._zeros_numpy(F.q, comp.n, comp.coef, comp.exps, comp.poly_start, powt, add, mul, 0,
                                F.q ** (comp.n - 1), False)
    assert got == want


def test_quartic_numpy_matches():
    sq = np.zeros(13, dtype=np.bool_)
    sq[(np.arange(1, 13) ** 2) % 13] = True
    assert _kernels._quartic_fibres_numpy(13, sq) + 1 == _kernels.quartic_projective_zeros(13)


def _random_multilinear(rng, n, terms):
    from fqgraph.polynomials import SparsePoly

    f = SparsePoly()
    for _ in range(terms):
        vs = [v for v in range(1, n + 1) if rng.random() < 0.5]
        f = f + SparsePoly.monomial(vs, int(rng.integers(-3, 4)))
    return f


def test_plane_count_matches_full_sweep():
    rng = np.random.default_rng(7)
    for q in (2, 3, 4, 5, 7, 8, 9):
        for _ in range(4):
            f = _random_multilinear(rng, 5, 6)
            s = PolySystem((f,), tuple(range(1, 6)), "affine")
            # a one-slice shard forces the generic sweep
            assert count_affine(s, q) == count_affine(s, q, shard=(0, 1))


def test_plane_count_numpy_fallback():
    from fqgraph.counting import _field_tables, _pow_table, compile_system

    rng = np.random.default_rng(11)
    for q in (5, 9):
        F = field_of_order(q)
        f = _random_multilinear(rng, 5, 8)
        s = PolySystem((f,), tuple(range(1, 6)), "affine")
        comp = compile_system(s.polys, s.variables, F)
        add, mul = _field_tables(F)
        powt = _pow_table(F, max(int(comp.exps.max()), 1))
        got = _kernels._zeros_bilinear_numpy(q, comp.n, comp.coef, comp.exps, powt, add, mul, 0,
                                             q ** (comp.n - 2), F.is_prime_field)
        assert got == count_affine(s, q, shard=(0, 1))
