import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqgraph.interpolation import (
    QPolynomial,
    crt,
    crt_reconstruct,
    parse_samples,
    residue_class_reconstruct,
    zeta_function,
    zeta_point_counts,
)

PRIMES = (2, 3, 5, 7, 11)


def chi3(q):
    return {0: 0, 1: 1, 2: -1}[q % 3]


def test_qpolynomial_arithmetic():
    q = QPolynomial.q()
    f = q**3 - q**2
    assert f(2) == 4 and f.degree == 3
    assert f == QPolynomial([0, 0, -1, 1])
    assert QPolynomial.parse(f.to_text()) == f
    assert QPolynomial.projective(3)(5) == 31
    quo, rem = f.divmod_linear()
    assert rem == 0 and quo == q**2
    assert (f - f) == QPolynomial() and not QPolynomial()
    assert QPolynomial.from_pairs(f.pairs()) == f


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-50, 50), max_size=8), st.lists(st.integers(-50, 50), max_size=8))
def test_qpolynomial_ring(a, b):
    A, B = QPolynomial(a), QPolynomial(b)
    for x in (-2, 0, 3, 7):
        assert (A * B)(x) == A(x) * B(x)
        assert (A + B)(x) == A(x) + B(x)


def test_crt():
    assert crt([1, 2], [3, 5]) == (7, 15)
    with pytest.raises(ValueError):
        crt([1, 1], [4, 6])


def test_round_trip_random():
    rng = random.Random(11)
    for _ in range(300):
        d = rng.randint(0, 13)
        P = QPolynomial([rng.randint(-40, 40) for _ in range(d + 1)])
        rec = crt_reconstruct([(q, P(q)) for q in PRIMES], 13, graph_form=False)
        assert rec.verdict == "polynomial" and rec.candidates[0].poly == P


def test_graph_form_k4():
    P = QPolynomial([0, 0, -1, 0, 0, 1])
    rec = crt_reconstruct([(q, P(q)) for q in PRIMES], 5, verify=[(4, P(4)), (9, P(9))])
    assert rec.start == 2
    assert [c.poly for c in rec.candidates] == [P]


def test_character_samples_rejected():
    f = lambda q: q**2 - chi3(q)  # noqa: E731
    samples = [(q, f(q)) for q in PRIMES]
    rec = crt_reconstruct(samples, 4, graph_form=False, verify=[(q, f(q)) for q in (4, 8, 9)])
    assert rec.verdict.startswith("not a polynomial")


def test_residue_class():
    f = lambda q: q**2 - chi3(q)  # noqa: E731
    samples = [(q, f(q)) for q in (4, 7, 13, 19, 5, 11)]
    rec = residue_class_reconstruct(samples, 3, 1, 2)
    assert rec.candidates[0].poly == QPolynomial([-1, 0, 1])
    with pytest.raises(ValueError):
        residue_class_reconstruct(samples, 3, 0, 2)


def test_parse_samples():
    assert parse_samples("2 4\n# c\n3 9\n\n5 25", drop=[3]) == [(2, 4), (5, 25)]


def test_zeta_of_line():
    z = zeta_function(QPolynomial([0, 0, 1]), 3)
    # zero locus is the line x1 + x2 + x3 = 0, counted directly over F_{2^k}
    from fqgraph.counting import PolySystem, projective_zeros
    from fqgraph.polynomials import SparsePoly
    line = PolySystem.of([SparsePoly.var(1) + SparsePoly.var(2) + SparsePoly.var(3)])
    direct = [projective_zeros(line, 2**k) for k in (1, 2, 3)]
    assert zeta_point_counts(z, 2, 3) == direct == [3, 5, 9]
    assert z.to_text() == "1 / ((1 - t)*(1 - q*t))"


def test_zeta_k4():
    P = QPolynomial([0, 0, -1, 0, 0, 1])
    z = zeta_function(P)
    assert zeta_point_counts(z, 3, 2) == [(q**6 - 1) // (q - 1) - P(q) for q in (3, 9)]
