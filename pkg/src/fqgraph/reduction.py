"""Symbolic reduction of complement counts to polynomials in q.

A count is carried as a Z[q]-linear combination of symbols.  The rules are
inclusion-exclusion over products, elimination of a variable in which
every polynomial is linear, solving a polynomial that is linear in one
variable, and coordinate rescaling.  Whatever no rule can break up is kept
as a residual symbol and evaluated by counting.

Two layers live here.  ``CountExpression`` holds projective or affine
complement counts and the rewriting steps act on it one term at a time;
they are meant for inspection and for checking the identities numerically.
``Reducer`` is the engine behind ``run_method1``: it works with affine zero
counts, memoises on normalised systems and only converts to projective
complements at the end.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .counting import (
    CountError,
    PolySystem,
    _radical,
    count_affine,
    count_multilinear,
    count_projective_complement,
    projective_size,
)
from .gf import conic_count, field_of_order, unit_indicator
from .graphs import GraphError, Multigraph, cycle_rank, is_connected, structural_probe
from .interpolation import QPolynomial
from .polynomials import (
    ConsistencyError,
    _mono_div,
    SparsePoly,
    delta_pair,
    factor_full,
    graph_polynomial,
    minor_polynomial,
    partial_factor,
    poly_sqrt,
    quartic_f,
    triangle_delta,
    vertex_face_decomposition,
)

Q = QPolynomial.q()
ONE = QPolynomial.const(1)


class ReductionError(ValueError):
    pass


class WorkExhausted(RuntimeError):
    """The reducer visited more systems than its node budget allows."""


# -- expressions over complement counts ---------------------------------------------


@dataclass(frozen=True)
class CountTerm:
    """coeff(q) times the complement count of a system.

    For a projective system this is the number of points of P^(n-1) off the
    common zero locus; for an affine one the number of points of F_q^n off it.
    """

    coeff: QPolynomial
    system: PolySystem

    def value(self, q: int, method: str = "auto") -> int:
        return self.coeff(q) * complement(self.system, q, method)


def complement(system: PolySystem, q: int, method: str = "multilinear") -> int:
    if method == "auto":
        # small systems are cheaper to enumerate than to sweep multilinearly
        small = q ** max(system.n - 2, 0) <= 1 << 24
        method = "enumerate" if small else "multilinear"
    if system.ambient == "projective":
        if method == "multilinear":
            return count_multilinear(system, q)
        return count_projective_complement(system, q, method="charts")
    zeros = count_multilinear(system, q) if method == "multilinear" else count_affine(system, q)
    return q**system.n - zeros


@dataclass
class CountExpression:
    terms: list = field(default_factory=list)

    @classmethod
    def single(cls, system: PolySystem, coeff=ONE) -> CountExpression:
        return cls([CountTerm(QPolynomial._lift(coeff), system)])

    def __add__(self, other: CountExpression) -> CountExpression:
        return CountExpression(self.terms + other.terms)

    def scaled(self, c) -> CountExpression:
        c = QPolynomial._lift(c)
        return CountExpression([CountTerm(t.coeff * c, t.system) for t in self.terms])

    def evaluate(self, q: int, method: str = "auto") -> int:
        return sum(t.value(q, method) for t in self.terms)

    def simplify(self) -> CountExpression:
        """Merge terms whose systems agree up to order and sign of polynomials."""
        acc = {}
        order = []
        for t in self.terms:
            key = (t.system.ambient, t.system.variables,
                   tuple(sorted({f.sign_normalized() for f in t.system.polys if f.terms}, key=lambda f: f.to_text())))
            if key not in acc:
                acc[key] = (QPolynomial(), PolySystem(key[2], key[1], key[0]))
                order.append(key)
            acc[key] = (acc[key][0] + t.coeff, acc[key][1])
        return CountExpression([CountTerm(c, s) for c, s in (acc[k] for k in order) if c])

    def replace(self, index: int, replacement: CountExpression) -> CountExpression:
        t = self.terms[index]
        return CountExpression(self.terms[:index] + replacement.scaled(t.coeff).terms + self.terms[index + 1:])

    def to_json(self) -> list:
        return [{"coeff": t.coeff.pairs(), **t.system.to_json()} for t in self.terms]

    def __len__(self):
        return len(self.terms)


def _sys(polys, variables, ambient) -> PolySystem:
    return PolySystem(tuple(polys), tuple(variables), ambient)


def expand_product(expr: CountExpression, index: int = 0, factorization=None) -> CountExpression:
    """Inclusion-exclusion on the first polynomial of a term, f = f1 * f2:

        C(f1 f2, F) = C(f1, F) + C(f2, F) - C(f1, f2, F).

    ``factorization`` defaults to partial_factor of that polynomial; an
    integer content is itself a factor.  Nothing changes when there is only
    one factor.
    """
    t = expr.terms[index]
    f, rest = t.system.polys[0], list(t.system.polys[1:])
    factors = list(factorization) if factorization is not None else list(partial_factor(f))
    factors = [h for h in factors if not (h.is_constant() and abs(h.constant_value()) == 1)]
    if len(factors) < 2:
        return expr
    f1, f2 = factors[0], SparsePoly.const(1)
    for h in factors[1:]:
        f2 = f2 * h
    sign = 1 if f1 * f2 == f else -1
    if sign < 0 and f1 * f2 != -f:
        raise ReductionError("factorization does not multiply back to the polynomial")
    vs, amb = t.system.variables, t.system.ambient
    rep = CountExpression([
        CountTerm(ONE, _sys([f1] + rest, vs, amb)),
        CountTerm(ONE, _sys([f2] + rest, vs, amb)),
        CountTerm(-ONE, _sys([f1, f2] + rest, vs, amb)),
    ])
    return expr.replace(index, rep)


def _resultant_parts(h: SparsePoly, v: int, g1: SparsePoly, g0: SparsePoly):
    hc = h.coefficients_in(v)
    d = len(hc) - 1
    hbar = SparsePoly()
    for i, c in enumerate(hc):
        if c:
            hbar = hbar + c * g0**i * g1 ** (d - i)
    hhat = hc[d] * g0 if d >= 1 else hc[0]
    return hbar, hhat


def eliminate_linear(expr: CountExpression, index: int, variable: int) -> CountExpression:
    """Solve the first polynomial f1 = g1 x - g0 of a term for x:

        C(f1, F) = C(g1, g0, F) + C(Fbar)' - C(g1, Fhat)'

    where ' marks the ambient space without x, Fbar are the resultants
    sum h_i g0^i g1^(d-i) and Fhat = h_d g0 (h_0 when x is absent from h).
    """
    t = expr.terms[index]
    f1, rest = t.system.polys[0], list(t.system.polys[1:])
    cs = f1.coefficients_in(variable)
    if len(cs) != 2 or not cs[1]:
        raise ReductionError(f"first polynomial is not linear in x{variable}")
    g1, g0 = cs[1], -cs[0]
    bars, hats = [], []
    for h in rest:
        hb, hh = _resultant_parts(h, variable, g1, g0)
        bars.append(hb)
        hats.append(hh)
    vs, amb = t.system.variables, t.system.ambient
    low = tuple(x for x in vs if x != variable)
    rep = CountExpression([
        CountTerm(ONE, _sys([g1, g0] + rest, vs, amb)),
        CountTerm(ONE, _sys(bars, low, amb)),
        CountTerm(-ONE, _sys([g1] + hats, low, amb)),
    ])
    return expr.replace(index, rep)


def rescaled_polynomial(f: SparsePoly, I, g: SparsePoly, h: SparsePoly) -> tuple[SparsePoly, int, int]:
    """f(x_i g / h for i in I) written as ftilde * g^k / h^l with ftilde a polynomial."""
    I = set(I)
    if (g.variables() | h.variables()) & I:
        raise ReductionError("rescaling factors must not involve the rescaled variables")
    if not g or not h:
        raise ReductionError("rescaling factors must be nonzero")
    parts = {}
    for m, c in f.terms.items():
        d = sum(1 for x in m if x in I)
        parts.setdefault(d, {})[m] = c
    top = max(parts, default=0)
    total = SparsePoly()
    for d, terms in parts.items():
        total = total + SparsePoly(terms) * g**d * h ** (top - d)
    k = 0
    while not g.is_constant() or abs(g.constant_value()) != 1:
        nxt = total.exact_div(g)
        if nxt is None or not total:
            break
        total, k = nxt, k + 1
    l = top
    while l > 0 and (not h.is_constant() or abs(h.constant_value()) != 1):
        nxt = total.exact_div(h)
        if nxt is None:
            break
        total, l = nxt, l - 1
    return total, k, l


def rescale(expr: CountExpression, index: int, variables, g: SparsePoly, h: SparsePoly) -> CountExpression:
    """Rescale x_i -> x_i g / h (i in variables) in an affine term:

        C(F) = C(gh, F) + C(Ftilde) - C(gh, Ftilde).

    A projective term is first split along x = 0 (its first coordinate) into
    a boundary term and an affine chart, and the chart is rescaled.
    """
    t = expr.terms[index]
    if t.system.ambient == "projective":
        expr = swap_to_affine(expr, index)
        index = index + 1
        t = expr.terms[index]
    vs = t.system.variables
    if not (g.variables() | h.variables()) <= set(vs):
        raise ReductionError("rescaling factors must live in the coordinates of the chart")
    if g == SparsePoly.const(1) and h == SparsePoly.const(1):
        return expr
    tilde = [rescaled_polynomial(f, variables, g, h)[0] for f in t.system.polys]
    gh = g * h
    polys = list(t.system.polys)
    rep = CountExpression([
        CountTerm(ONE, _sys([gh] + polys, vs, "affine")),
        CountTerm(ONE, _sys(tilde, vs, "affine")),
        CountTerm(-ONE, _sys([gh] + tilde, vs, "affine")),
    ])
    return expr.replace(index, rep)


def swap_to_affine(expr: CountExpression, index: int = 0, variable: int | None = None) -> CountExpression:
    """Projective term -> boundary (x = 0, projective) + chart (x = 1, affine)."""
    t = expr.terms[index]
    if t.system.ambient != "projective":
        return expr
    vs = t.system.variables
    x = vs[0] if variable is None else variable
    rest = tuple(v for v in vs if v != x)
    rep = CountExpression([
        CountTerm(ONE, _sys([f.subs(x, 0) for f in t.system.polys], rest, "projective")),
        CountTerm(ONE, _sys([f.subs(x, 1) for f in t.system.polys], rest, "affine")),
    ])
    return expr.replace(index, rep)


def cor_shortcuts(expr: CountExpression, index: int = 0, variables=None, rule: str = "auto") -> CountExpression:
    """Closed-form elimination for one or two polynomials of a projective term.

    rule "single": C(f) = q C(f1, f0)' - C(f1)' for f = f1 x + f0, deg f > 1.
    rule "pair": C(f1, f2) = q C(f11, f10, f21, f20)' + C(f11 f20 - f10 f21)' - C(f11, f21)',
        both of degree > 1.
    rule "double": for f = f11 x1 x2 + f10 x1 + f01 x2 + f00 of degree > 2 with
        f10 f01 - f11 f00 = D^2,
        C(f) = q^2 C(f11, f10, f01, f00)'' + q [C(D)'' - C(f11, f01)'' - C(f11, f10)''] + C(f11)''.
    "auto" tries double, pair, single.  A rule whose hypotheses fail leaves
    the expression unchanged.
    """
    t = expr.terms[index]
    sys_ = t.system
    if sys_.ambient != "projective":
        return expr
    polys = [f for f in sys_.polys if f.terms]
    vs = sys_.variables
    rules = ("double", "pair", "single") if rule == "auto" else (rule,)

    def linear_in(f, x):
        return f.degree_in(x) == 1

    for r in rules:
        if r == "double" and len(polys) == 1 and polys[0].degree() > 2:
            f = polys[0]
            cands = [tuple(variables)] if variables else [(a, b) for a in vs for b in vs if a < b]
            for x1, x2 in cands:
                if not (linear_in(f, x1) and linear_in(f, x2)):
                    continue
                try:
                    D = delta_pair(f, x1, x2)
                except Exception:
                    continue
                c1 = f.coefficients_in(x1) + [SparsePoly()] * 2
                hi = c1[1].coefficients_in(x2) + [SparsePoly()] * 2
                lo = c1[0].coefficients_in(x2) + [SparsePoly()] * 2
                f11, f10, f01, f00 = hi[1], hi[0], lo[1], lo[0]
                low = tuple(v for v in vs if v not in (x1, x2))
                rep = CountExpression([
                    CountTerm(Q**2, _sys([f11, f10, f01, f00], low, "projective")),
                    CountTerm(Q, _sys([D], low, "projective")),
                    CountTerm(-Q, _sys([f11, f01], low, "projective")),
                    CountTerm(-Q, _sys([f11, f10], low, "projective")),
                    CountTerm(ONE, _sys([f11], low, "projective")),
                ])
                return expr.replace(index, rep)
        if r == "pair" and len(polys) == 2 and min(f.degree() for f in polys) > 1:
            f1, f2 = polys
            cands = [variables[0]] if variables else list(vs)
            for x in cands:
                if not (linear_in(f1, x) or linear_in(f2, x)):
                    continue
                if f1.degree_in(x) > 1 or f2.degree_in(x) > 1:
                    continue
                a = f1.coefficients_in(x) + [SparsePoly()] * 2
                b = f2.coefficients_in(x) + [SparsePoly()] * 2
                f11, f10, f21, f20 = a[1], a[0], b[1], b[0]
                low = tuple(v for v in vs if v != x)
                rep = CountExpression([
                    CountTerm(Q, _sys([f11, f10, f21, f20], low, "projective")),
                    CountTerm(ONE, _sys([f11 * f20 - f10 * f21], low, "projective")),
                    CountTerm(-ONE, _sys([f11, f21], low, "projective")),
                ])
                return expr.replace(index, rep)
        if r == "single" and len(polys) == 1 and polys[0].degree() > 1:
            f = polys[0]
            cands = [variables[0]] if variables else list(vs)
            for x in cands:
                if not linear_in(f, x):
                    continue
                c = f.coefficients_in(x)
                low = tuple(v for v in vs if v != x)
                rep = CountExpression([
                    CountTerm(Q, _sys([c[1], c[0]], low, "projective")),
                    CountTerm(-ONE, _sys([c[1]], low, "projective")),
                ])
                return expr.replace(index, rep)
    return expr


# -- entry formulas at a 3-valent vertex ---------------------------------------------


ENTRY_MODES = ("vertex", "vertex_alt", "triangle")


def _minor(g, deleted=(), contracted=(), spare=None):
    return minor_polynomial(g, deleted=deleted, contracted=contracted, spare=spare)


def theorem1_entry(g: Multigraph, mode: str = "vertex", vertex: int | None = None,
                   edges: tuple | None = None) -> CountExpression:
    """The complement count of the graph hypersurface written through minors.

    mode "vertex": at a 3-valent vertex with edges 1, 2, 3,
        q^3 C(P_-123, P_-1/23, P_-2/13, P_/123) - q^2 C(P_-123, P_-1/23, P_-2/13)
    over the other n - 3 edges.
    mode "vertex_alt": with D = (P_-1/23 + P_-2/13 - P_-3/12) / 2 and
    D12 = P_-123 x3 + D,
        q C(P_/3) + q C(D12) - q^2 C(D).
    mode "triangle": edges 2, 3, 4 form a triangle and
    d = (P_-123/4 + P_-24/13 - P_-34/12) / 2,
        q(q-2) C(P_-2/3) + q(q-1)[C(P_-123) + C(P_-24/3)] + q^2 C(P_-2/34)
        + q^2 [C(P_-1234) + C(P_-123/4) - C(P_-1234, d) - C(P_-123/4, d) - (q-2) C(d)].
    P_-A/B is the graph polynomial of the minor with A deleted and B
    contracted; each count lives in the coordinates of the edges not in A or B.
    """
    if mode not in ENTRY_MODES:
        raise ReductionError(f"unknown entry mode {mode!r}")
    probe = structural_probe(g)
    if not (probe.is_simple and probe.vertex_connectivity_ge_2):
        raise ReductionError("entry formulas need a simple graph with vertex connectivity >= 2")
    labels = tuple(sorted(g.labels))
    if mode == "triangle":
        options = probe.triangles_at_3valent
        if vertex is not None:
            options = [o for o in options if o[0] == vertex]
        if edges is not None:
            options = [o for o in options if o[1] == tuple(edges)]
        if not options:
            raise ReductionError("no 3-valent vertex attached to a triangle")
        if cycle_rank(g) < 3:
            # the minors degenerate to constants and the formula overcounts
            raise ReductionError("the triangle formula needs cycle rank >= 3")
        v, (e1, e2, e3, e4) = options[0]
    else:
        options = probe.three_valent_vertices
        if vertex is not None:
            options = [o for o in options if o[0] == vertex]
        if edges is not None:
            options = [(v, tuple(edges)) for v, es in options if set(es) == set(edges)]
        if not options:
            raise ReductionError("no 3-valent vertex")
        v, (e1, e2, e3) = options[0]
    proj = "projective"

    def coords(*drop):
        return tuple(x for x in labels if x not in drop)

    if mode in ("vertex", "vertex_alt"):
        vf = vertex_face_decomposition(g, v, (e1, e2, e3))
        low = coords(e1, e2, e3)
        if mode == "vertex":
            terms = [
                CountTerm(Q**3, _sys([vf.psi_del_123, vf.psi_1_23, vf.psi_2_13, vf.psi_con_123], low, proj)),
                CountTerm(-(Q**2), _sys([vf.psi_del_123, vf.psi_1_23, vf.psi_2_13], low, proj)),
            ]
            if vf.psi_del_123.is_constant():
                # h1 = 2: the slice where every other edge variable vanishes is
                # not a zero of Psi, so its conic complement must be added back
                x1, x2, x3 = (SparsePoly.var(e) for e in (e1, e2, e3))
                conic = vf.psi_del_123 * (x1 * x2 + x1 * x3 + x2 * x3)
                terms.append(CountTerm(ONE, _sys([conic], (e1, e2, e3), proj)))
            return CountExpression(terms)
        d12 = vf.psi_del_123 * SparsePoly.var(e3) + vf.delta
        return CountExpression([
            CountTerm(Q, _sys([_minor(g, contracted=(e3,))], coords(e3), proj)),
            CountTerm(Q, _sys([d12], coords(e1, e2), proj)),
            CountTerm(-(Q**2), _sys([vf.delta], low, proj)),
        ])
    delta = triangle_delta(g, (e1, e2, e3, e4))
    p1234 = _minor(g, deleted=(e1, e2, e3, e4), spare=v)
    p123_4 = _minor(g, deleted=(e1, e2, e3), contracted=(e4,), spare=v)
    low4 = coords(e1, e2, e3, e4)
    return CountExpression([
        CountTerm(Q * (Q - 2), _sys([_minor(g, deleted=(e2,), contracted=(e3,))], coords(e2, e3), proj)),
        CountTerm(Q * (Q - 1), _sys([_minor(g, deleted=(e1, e2, e3), spare=v)], coords(e1, e2, e3), proj)),
        CountTerm(Q * (Q - 1), _sys([_minor(g, deleted=(e2, e4), contracted=(e3,))], coords(e2, e3, e4), proj)),
        CountTerm(Q**2, _sys([_minor(g, deleted=(e2,), contracted=(e3, e4))], coords(e2, e3, e4), proj)),
        CountTerm(Q**2, _sys([p1234], low4, proj)),
        CountTerm(Q**2, _sys([p123_4], low4, proj)),
        CountTerm(-(Q**2), _sys([p1234, delta], low4, proj)),
        CountTerm(-(Q**2), _sys([p123_4, delta], low4, proj)),
        CountTerm(-(Q**2) * (Q - 2), _sys([delta], low4, proj)),
    ])


# -- denominator reduction --------------------------------------------------------------


@dataclass
class DenominatorResult:
    """c2 = sign * C(psi) mod q, C counted in P^(m-1) over ``variables``.

    For an integer psi the count is the unit indicator of psi.
    """

    m: int
    psi: SparsePoly
    sign: int
    variables: tuple
    eliminated: tuple
    stopped: str

    @property
    def is_integer(self) -> bool:
        return self.psi.is_constant()

    def c2(self, q: int, method: str = "multilinear") -> int:
        if self.is_integer:
            val = unit_indicator(self.psi.constant_value(), q) if self.m >= 1 else 0
        else:
            val = complement(_sys([self.psi], self.variables, "projective"), q, method)
        return (self.sign * val) % q

    def to_json(self) -> dict:
        return {"m": self.m, "psi": self.psi.to_text(), "sign": self.sign,
                "variables": list(self.variables), "eliminated": list(self.eliminated), "stopped": self.stopped}


def _vanishes_mod_q(polys, nvars: int) -> bool:
    """Chevalley-Warning: sum of degrees < number of variables, no constants."""
    polys = [f for f in polys if f.terms]
    if any(f.is_constant() for f in polys):
        return False
    if not polys:
        return True
    return sum(f.degree() for f in polys) < nvars


def _two_factors(f: SparsePoly):
    """Split f into two coprime non-constant parts when a factorisation exists."""
    facs = [h for h in partial_factor(f) if not h.is_constant()]
    if len(facs) < 2 and len(f) > 2 and f.degree() > 1:
        _, full = factor_full(f)
        facs = [h for h, mult in full for _ in range(mult)]
    if len(facs) < 2:
        return None
    distinct = sorted({h.sign_normalized() for h in facs}, key=lambda h: h.to_text())
    if len(distinct) != len(facs):
        return None
    a = distinct[0]
    b = SparsePoly.const(1)
    for h in distinct[1:]:
        b = b * h
    return a, b


def denominator_reduce(g: Multigraph, edge_sequence) -> DenominatorResult:
    """Track c2 = C(Psi)/q^2 mod q through successive eliminations.

    The first three edges of the sequence must meet at a 3-valent vertex;
    then c2 = C(P_-123, D) mod q.  For a pair (f1, f2) the pair rule keeps only
    its middle term, C(f1, f2) = C(f11 f20 - f10 f21) mod q, valid when both
    degrees exceed 1 and the dropped term vanishes mod q by degree counting.
    A product psi = a b continues as the pair (a, b) with a sign flip,
    C(ab) = -C(a, b) mod q.  The loop stops when a step is not justified.
    """
    seq = list(edge_sequence)
    if len(seq) < 5:
        raise ReductionError("denominator reduction needs a sequence of at least 5 edges")
    probe = structural_probe(g)
    star = {frozenset(es): v for v, es in probe.three_valent_vertices}
    v = star.get(frozenset(seq[:3]))
    if v is None:
        raise ReductionError("the first three edges must be the edges of a 3-valent vertex")
    vf = vertex_face_decomposition(g, v, tuple(sorted(seq[:3])))
    variables = [x for x in sorted(g.labels) if x not in seq[:3]]
    pair = (vf.psi_del_123, vf.delta)
    sign = 1
    eliminated = list(seq[:3])
    psi = None
    stopped = "sequence exhausted"
    for x in seq[3:]:
        if pair is None:
            # psi is current; try to split it into a pair
            split = _two_factors(psi)
            if split is None:
                stopped = f"no factorisation before x{x}"
                break
            if not all(_vanishes_mod_q([h], len(variables)) for h in split):
                stopped = f"factor counts not divisible by q before x{x}"
                break
            pair, flip = split, -1
        else:
            flip = 1
        f1, f2 = pair
        if min(f1.degree(), f2.degree()) <= 1 or f1.degree_in(x) > 1 or f2.degree_in(x) > 1:
            stopped = f"pair rule not applicable at x{x}"
            if flip < 0:
                pair = None  # keep the unsplit psi
            break
        a = f1.coefficients_in(x) + [SparsePoly()] * 2
        b = f2.coefficients_in(x) + [SparsePoly()] * 2
        rest = [y for y in variables if y != x]
        if not _vanishes_mod_q([a[1], b[1]], len(rest)):
            stopped = f"dropped term not divisible by q at x{x}"
            if flip < 0:
                pair = None
            break
        sign *= flip
        psi = a[1] * b[0] - a[0] * b[1]
        variables = rest
        eliminated.append(x)
        pair = None
        if psi.is_constant():
            stopped = "integer"
            break
    if psi is None:
        psi = pair[0] * pair[1]
        sign = -sign  # C(f1, f2) = -C(f1 f2) mod q when both counts vanish mod q
        if not all(_vanishes_mod_q([h], len(variables)) for h in pair):
            raise ReductionError("no elimination step was possible")
    return DenominatorResult(len(variables), psi, sign, tuple(variables), tuple(eliminated), stopped)


# -- edge sequences ----------------------------------------------------------------------


def edge_sequence_heuristic(g: Multigraph, start=()) -> list[int]:
    """Greedy order: each prefix completes as many vertices, then cycles, as possible.

    Ties go to the smallest edge id.  ``start`` fixes a prefix.
    """
    chosen: list[int] = list(start)
    remaining = [e for e in sorted(g.labels) if e not in chosen]
    emap = g.edge_map
    need = {v: g.degree(v) for v in range(g.vertex_count)}
    while remaining:
        best = None
        for e in remaining:
            trial = chosen + [e]
            ends = Counter()
            for lab in trial:
                a, b = emap[lab]
                ends[a] += 1
                ends[b] += 1 if a != b else 1
            done = sum(1 for v, c in ends.items() if c == need[v])
            sub = Multigraph(g.vertex_count, tuple(emap[lab] for lab in trial), tuple(trial))
            score = (done, cycle_rank(sub))
            if best is None or score > best[0]:
                best = (score, e)
        chosen.append(best[1])
        remaining.remove(best[1])
    return chosen


def denominator_sequence(g: Multigraph) -> list[int]:
    """Greedy order opening with the edges of the first 3-valent vertex."""
    stars = structural_probe(g).three_valent_vertices
    if not stars:
        raise ReductionError("no 3-valent vertex")
    return edge_sequence_heuristic(g, sorted(stars[0][1]))


# -- the reduction engine ------------------------------------------------------------------


def _prime_radical(n: int) -> int:
    """Product of the distinct primes dividing n; 0 stays 0."""
    n = abs(n)
    if n <= 1:
        return n
    from sympy import factorint

    out = 1
    for p in factorint(n):
        out *= p
    return out


def _gate(a: int, b: int) -> int:
    return math.gcd(a, b)


def _used(polys) -> frozenset:
    vs = set()
    for f in polys:
        vs |= f.variables()
    return frozenset(vs)


@lru_cache(maxsize=200_000)
def _sympy_factors(f: SparsePoly) -> tuple:
    _, facs = factor_full(f)
    return tuple(h for h, mult in facs for _ in range(mult))


def _reduce_once(g: SparsePoly, f: SparsePoly):
    """g minus a multiple of f cancelling one term of g, if that shortens g."""
    lm, lc = f.leading_term()
    if abs(lc) != 1:
        return None
    for m, c in g.sorted_terms():
        t = _mono_div(m, lm)
        if t is None:
            continue
        h = g - SparsePoly.monomial(t, c * lc) * f
        if len(h) < len(g) and (h.is_multilinear() or not g.is_multilinear()):
            return h
    return None


def interreduce(polys, rounds: int = 50) -> list:
    """Shorten polynomials by subtracting multiples of one another.

    The common zero set is unchanged: each step replaces g by g - t f.
    """
    polys = [f for f in polys if f.terms]
    for _ in range(rounds):
        changed = False
        for i in range(len(polys)):
            for j in range(len(polys)):
                if i == j or not polys[i].terms or not polys[j].terms:
                    continue
                h = _reduce_once(polys[i], polys[j])
                if h is not None:
                    polys[i] = h
                    changed = True
        polys = [f for f in polys if f.terms]
        if not changed:
            break
    return polys


def _canon(polys, reduce: bool = True) -> tuple[int, tuple]:
    """(gate, key): gcd radical of the constants and the normalised system."""
    gate = 0
    seen = set()
    polys = [f for f in polys if f.terms]
    if reduce and len(polys) > 1:
        polys = interreduce(polys)
    for f in polys:
        if not f.terms:
            continue
        if f.is_constant():
            gate = math.gcd(gate, abs(f.constant_value()))
            continue
        f = f.sign_normalized()
        if f.content() == 1:
            f = _radical(f)
        seen.add(f)
    gate = _prime_radical(gate)
    items = sorted(seen, key=lambda f: (len(f), f.degree(), f.to_text()))
    kept = []
    for f in items:
        if any(h.variables() <= f.variables() and h.degree() <= f.degree() and f.exact_div(h) is not None
               for h in kept):
            continue
        kept.append(f)
    return gate, tuple(sorted(kept, key=lambda f: f.to_text()))


def _mul_gate(expr: dict, gate: int, scale: QPolynomial, out: dict):
    for (g0, sym), c in expr.items():
        g1 = _gate(g0, gate)
        if g1 == 1:
            continue
        k = (g1, sym)
        v = out.get(k, QPolynomial()) + c * scale
        if v:
            out[k] = v
        else:
            out.pop(k, None)


def _add(out: dict, expr: dict, scale: QPolynomial):
    _mul_gate(expr, 0, scale, out)


class Reducer:
    """Affine zero counts N(F) in F_q^k as Z[q]-combinations of symbols.

    An expression maps (gate, symbol) to a polynomial in q.  gate is a
    squarefree integer g standing for the indicator [p divides g] of the
    characteristic (g = 0: always 1); symbol is None for the constant 1 or a
    normalised system whose zero count could not be reduced further.
    """

    def __init__(self, factor: str = "auto", pivot_depth: int = 2, pivot_max_degree: int = 6,
                 debug: bool = False, debug_max_vars: int = 6, order=None,
                 substitute: str = "safe", choice: str = "order", interreduce: bool = False,
                 max_nodes: int | None = None):
        self.memo: dict = {}
        self.nodes = 0
        self.max_nodes = max_nodes
        self.interreduce = interreduce
        self.substitute = substitute
        self.choice = choice
        self.factor = factor
        self.pivot_depth = pivot_depth
        self.pivot_max_degree = pivot_max_degree
        self.debug = debug
        self.debug_max_vars = debug_max_vars
        self.order = order  # variable priority; smaller first when None
        self.rules = Counter()
        self.eliminated: list[int] = []
        self._elim_seen: set = set()
        self._depth = 0

    # expressions -----------------------------------------------------------------

    def zeros(self, polys, nvars: int) -> dict:
        gate, key = _canon(polys, self.interreduce)
        if gate == 1:
            return {}
        k = len(_used(key))
        base = self._count(key) if key else {(0, None): ONE}
        out: dict = {}
        _mul_gate(base, gate, Q ** (nvars - k), out)
        return out

    def _count(self, key: tuple) -> dict:
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise WorkExhausted(f"more than {self.max_nodes} systems visited")
        val = self._compute(key)
        if self.debug and len(_used(key)) <= self.debug_max_vars:
            self._check(key, val)
        self.memo[key] = val
        return val

    def _check(self, key, val):
        vs = tuple(sorted(_used(key)))
        for q in (2, 3):
            want = count_affine(PolySystem(key, vs, "affine"), q)
            got = evaluate_affine(val, q)
            if want != got:
                raise ConsistencyError(f"rewrite unsound at q={q}: {want} != {got} for {[f.to_text() for f in key]}")

    def _note(self, rule: str, var=None):
        self.rules[rule] += 1
        if var is not None and var not in self._elim_seen:
            self._elim_seen.add(var)
            self.eliminated.append(var)

    def _rank(self, v):
        if self.order is None:
            return v
        return self.order.get(v, len(self.order) + v)

    # rules -----------------------------------------------------------------------

    def _split(self, polys, idx, a, b, k):
        rest = [u for j, u in enumerate(polys) if j != idx]
        out: dict = {}
        _add(out, self.zeros(rest + [a], k), ONE)
        _add(out, self.zeros(rest + [b], k), ONE)
        _add(out, self.zeros(rest + [a, b], k), -ONE)
        return out

    def _compute(self, polys: tuple) -> dict:
        polys = list(polys)
        k = len(_used(polys))
        # integer content: N(c f, F) = N(f, F) + [p | c] (N(F) - N(f, F))
        for idx, f in enumerate(polys):
            c = f.content()
            if c > 1:
                self._note("content")
                prim = f.exact_div(c)
                rest = [u for j, u in enumerate(polys) if j != idx]
                with_f = self.zeros(rest + [prim], k)
                out: dict = {}
                _add(out, with_f, ONE)
                gated: dict = {}
                _add(gated, self.zeros(rest, k), ONE)
                _add(gated, with_f, -ONE)
                _mul_gate(gated, _prime_radical(c), ONE, out)
                return out
        # a unit coefficient lets us solve for the variable
        best = None
        multilinear = all(f.is_multilinear() for f in polys)
        for idx, f in enumerate(polys):
            for v in f.variables():
                cs = f.coefficients_in(v)
                if len(cs) == 2 and cs[1].is_constant() and abs(cs[1].constant_value()) == 1:
                    value = -cs[0] * cs[1].constant_value()
                    rest = [u.subs(v, value) if v in u.variables() else u for j, u in enumerate(polys) if j != idx]
                    if self.substitute == "safe" and multilinear and not all(u.is_multilinear() for u in rest):
                        continue
                    cand = (self._rank(v), idx, v)
                    if best is None or cand[0] < best[0][0]:
                        best = (cand, rest)
        if best is not None:
            (_, idx, v), rest = best
            self._note("substitute", v)
            return self.zeros(rest, k - 1)
        # products: N(a b, F) = N(a, F) + N(b, F) - N(a, b, F)
        for idx, f in enumerate(polys):
            facs = [h for h in partial_factor(f) if not h.is_constant()]
            if len(facs) > 1:
                self._note("product")
                b = SparsePoly.const(1)
                for h in facs[1:]:
                    b = b * h
                return self._split(polys, idx, facs[0], b, k)
        if self.factor != "never":
            for idx, f in enumerate(polys):
                if f.degree() < 2 or len(f) < 3:
                    continue
                if self.factor == "auto" and len(f) < 4:
                    continue
                facs = _sympy_factors(f)
                if len(facs) > 1:
                    self._note("factor")
                    b = SparsePoly.const(1)
                    for h in facs[1:]:
                        b = b * h
                    return self._split(polys, idx, facs[0], b, k)
        # complete elimination of a variable linear in every polynomial
        lin = [v for v in _used(polys) if all(f.degree_in(v) <= 1 for f in polys)]
        if lin:
            if self.choice == "fewest":
                v = min(lin, key=lambda x: (sum(1 for f in polys if x in f.variables()), self._rank(x)))
            elif self.choice == "lookahead" and len(lin) > 1:
                v = min(lin, key=lambda x: (self._lookahead(polys, x), self._rank(x)))
            else:
                v = min(lin, key=self._rank)
            self._note("eliminate", v)
            A, B = [], []
            for f in polys:
                cs = f.coefficients_in(v) + [SparsePoly()]
                A.append(cs[1])
                B.append(cs[0])
            M = []
            for i in range(len(polys)):
                for j in range(i + 1, len(polys)):
                    if A[i] or A[j]:
                        M.append(A[i] * B[j] - A[j] * B[i])
            out: dict = {}
            _add(out, self.zeros(A + B, k - 1), Q)
            _add(out, self.zeros(M, k - 1), ONE)
            _add(out, self.zeros(A, k - 1), -ONE)
            return out
        # solve a polynomial linear in one variable and substitute into the rest
        if self._depth < self.pivot_depth:
            pick = self._pivot_choice(polys)
            if pick is not None:
                idx, v = pick
                self._note("solve", v)
                f = polys[idx]
                cs = f.coefficients_in(v)
                g1, g0 = cs[1], -cs[0]
                rest = [u for j, u in enumerate(polys) if j != idx]
                bars, hats = [], []
                for h in rest:
                    hb, hh = _resultant_parts(h, v, g1, g0)
                    bars.append(hb)
                    hats.append(hh)
                self._depth += 1
                try:
                    out: dict = {}
                    _add(out, self.zeros([g1, g0] + rest, k), ONE)
                    _add(out, self.zeros(bars, k - 1), ONE)
                    _add(out, self.zeros([g1] + hats, k - 1), -ONE)
                finally:
                    self._depth -= 1
                return out
        self._note("residual")
        return {(0, polys_key(polys)): ONE}

    def _lookahead(self, polys, v):
        """Cost of eliminating v: non-multilinear resultant factors first, then size."""
        A, B = [], []
        for f in polys:
            cs = f.coefficients_in(v) + [SparsePoly()]
            A.append(cs[1])
            B.append(cs[0])
        bad = size = 0
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                m = A[i] * B[j] - A[j] * B[i]
                if not m.terms:
                    continue
                for h in partial_factor(m):
                    if not h.is_multilinear():
                        bad += 1
                    size += len(h)
        return bad, size

    def _pivot_choice(self, polys):
        best = None
        for idx, f in enumerate(polys):
            for v in f.variables():
                if f.degree_in(v) != 1:
                    continue
                cs = f.coefficients_in(v)
                g1, g0 = cs[1], cs[0]
                grow = 0
                for j, h in enumerate(polys):
                    if j == idx:
                        continue
                    d = h.degree_in(v)
                    grow = max(grow, h.degree() + d * max(g0.degree(), g1.degree()))
                if grow > self.pivot_max_degree:
                    continue
                cand = ((grow, len(g1), self._rank(v)), idx, v)
                if best is None or cand < best:
                    best = cand
        return None if best is None else best[1:]

    # conversion to projective complements -----------------------------------------------

    def nbar(self, polys, variables) -> NbarForm:
        """C(F) in P^(n-1) for homogeneous F, n = len(variables)."""
        n = len(variables)
        polys = [f for f in polys if f.terms]
        if not all(f.is_homogeneous() for f in polys):
            raise ReductionError("projective reduction needs homogeneous polynomials")
        consts = 0
        for f in polys:
            if f.is_constant():
                consts = math.gcd(consts, abs(f.constant_value()))
        cgate = _prime_radical(consts)
        numer: dict = {(0, None): Q**n - 1}
        if cgate != 1:
            _add(numer, {(cgate, None): ONE}, ONE)
        zeros = self.zeros(polys, n)
        resid: dict = {}
        for (gate, sym), c in zeros.items():
            if sym is None:
                _add(numer, {(gate, None): c}, -ONE)
            else:
                k = len(_used(sym))
                _add(numer, {(gate, None): c}, -(Q**k))
                _add(resid, {(gate, sym): c}, ONE)
        gates = {}
        rems = {}
        for (gate, _), c in numer.items():
            quo, rem = c.divmod_linear(1)
            if quo:
                gates[gate] = quo
            if rem:
                rems[gate] = rem
        _check_remainders(rems)
        return NbarForm(gates, resid)


def polys_key(polys) -> tuple:
    return tuple(sorted(polys, key=lambda f: f.to_text()))


def _check_remainders(rems: dict):
    """The dropped remainders must cancel for every characteristic."""
    if not rems:
        return
    primes = set()
    for g in rems:
        if g:
            from sympy import factorint

            primes |= set(factorint(g))
    primes |= {2, 3, 5, 7, 11}
    for p in primes:
        if sum(r for g, r in rems.items() if g % p == 0) != 0:
            raise ConsistencyError(f"complement count is not integral at p={p}")


@dataclass
class NbarForm:
    """C = sum_gate [p | gate] poly(q) + sum c(q) [p | gate] C(residual)."""

    gates: dict
    residuals: dict

    def __add__(self, other):
        gates = dict(self.gates)
        for g, c in other.gates.items():
            v = gates.get(g, QPolynomial()) + c
            if v:
                gates[g] = v
            else:
                gates.pop(g, None)
        res: dict = {}
        _add(res, self.residuals, ONE)
        _add(res, other.residuals, ONE)
        return NbarForm(gates, res)

    def scaled(self, c: QPolynomial) -> NbarForm:
        res: dict = {}
        _add(res, self.residuals, c)
        return NbarForm({g: p * c for g, p in self.gates.items() if p * c}, res)


def evaluate_affine(expr: dict, q: int) -> int:
    p = field_of_order(q).p
    total = 0
    for (gate, sym), c in expr.items():
        if gate % p:
            continue
        if sym is None:
            total += c(q)
        else:
            vs = tuple(sorted(_used(sym)))
            total += c(q) * count_affine(PolySystem(sym, vs, "affine"), q)
    return total


# -- residual classification -----------------------------------------------------------------


def _is_conic(f: SparsePoly):
    vs = sorted(f.variables())
    if len(vs) != 2 or f.degree() != 2 or not f.is_homogeneous():
        return None
    a, b = vs
    A = f.terms.get((a, a), 0)
    B = f.terms.get((a, b), 0)
    C = f.terms.get((b, b), 0)
    disc = B * B - 4 * A * C
    if A == 0 or C == 0:
        return None
    g = math.gcd(math.gcd(A, B), C)
    if g != 1:
        return None
    if disc == -3:
        return "a^2+ab+b^2"
    if disc == -4:
        return "a^2+b^2"
    return None


def _is_quartic(f: SparsePoly):
    if len(f) != 12 or f.degree() != 4 or len(f.variables()) != 4:
        return False
    from itertools import permutations

    target = quartic_f()
    vs = sorted(f.variables())
    g = f.sign_normalized()
    for perm in permutations(vs):
        if g.rename(dict(zip(perm, (1, 2, 3, 4)))) == target:
            return True
    return False


def classify_residual(polys) -> str:
    polys = [f for f in polys if f.terms]
    if len(polys) == 1:
        f = polys[0]
        conic = _is_conic(f)
        if conic:
            return f"conic:{conic}"
        if _is_quartic(f):
            return "quartic"
    return "residual"


@dataclass
class Residual:
    coeff: QPolynomial
    gate: int
    system: PolySystem
    kind: str

    def value(self, q: int, method: str = "auto") -> int:
        p = field_of_order(q).p
        if self.gate % p:
            return 0
        if self.kind.startswith("conic:"):
            base = conic_count(self.kind.split(":", 1)[1], field_of_order(q))
        else:
            base = complement(self.system, q, method)
        return self.coeff(q) * base

    def to_json(self) -> dict:
        return {"coeff": self.coeff.pairs(), "gate": self.gate, "kind": self.kind,
                "system": [f.to_text() for f in self.system.polys], "ambient": self.system.ambient,
                "variables": list(self.system.variables)}


@dataclass
class ReductionReport:
    """C(Psi) = resolved(q) + sum_g unit_terms[g](q) C(g) + sum residuals.

    C(g) is the unit indicator of the integer g (1 when g is invertible in F_q).
    """

    resolved: QPolynomial
    unit_terms: dict
    residuals: list
    trace: dict
    n: int
    certified: dict = field(default_factory=dict)

    @property
    def fully_resolved(self) -> bool:
        return not self.residuals and not self.unit_terms

    def evaluate(self, q: int, method: str = "auto") -> int:
        total = self.resolved(q)
        for g, c in self.unit_terms.items():
            total += c(q) * unit_indicator(g, q)
        for r in self.residuals:
            total += r.value(q, method)
        return total

    def grothendieck(self) -> str:
        """Class-style rendering: q becomes L, residuals become [X] symbols."""
        parts = [self.resolved.to_text("L")] if self.resolved else []
        for g, c in sorted(self.unit_terms.items()):
            parts.append(f"({c.to_text('L')})*[{g}]")
        for i, r in enumerate(self.residuals):
            name = "F" if r.kind == "quartic" else (r.kind.split(":", 1)[1] if r.kind.startswith("conic") else f"X{i}")
            gate = "" if r.gate == 0 else f"*(1 - [{r.gate}])"
            parts.append(f"({r.coeff.to_text('L')})*[{name}]{gate}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "resolved": self.resolved.pairs(),
            "resolved_text": self.resolved.to_text(),
            "unit_terms": [{"gate": g, "coeff": c.pairs()} for g, c in sorted(self.unit_terms.items())],
            "residuals": [r.to_json() for r in self.residuals],
            "trace": self.trace,
            "n": self.n,
            "certified": {str(k): v for k, v in self.certified.items()},
            "class": self.grothendieck(),
        }


def _form_to_report(form: NbarForm, n: int, back: dict, trace: dict) -> ReductionReport:
    resolved = QPolynomial()
    units = {}
    for g, c in form.gates.items():
        # [p | g] = 1 - C(g)
        resolved = resolved + c
        if g:
            units[g] = units.get(g, QPolynomial()) - c
    units = {g: c for g, c in units.items() if c}
    residuals = []
    for (g, sym), c in sorted(form.residuals.items(), key=lambda kv: (kv[0][0], [f.to_text() for f in kv[0][1]])):
        polys = tuple(f.rename(back) for f in sym)
        vs = tuple(sorted(_used(polys)))
        residuals.append(Residual(c, g, PolySystem(polys, vs, "projective"), classify_residual(polys)))
    return ReductionReport(resolved, units, residuals, trace, n)


def reduce_system(system: PolySystem, reducer: Reducer | None = None) -> ReductionReport:
    """Reduce the complement count of an arbitrary projective system."""
    reducer = reducer or Reducer()
    form = reducer.nbar(system.polys, system.variables)
    trace = {"rules": dict(reducer.rules), "eliminated": list(reducer.eliminated)}
    return _form_to_report(form, system.n, {}, trace)


def reduce_expression(expr: CountExpression, reducer: Reducer) -> NbarForm:
    total = NbarForm({}, {})
    for t in expr.terms:
        s = t.system
        if s.ambient == "projective":
            form = reducer.nbar(s.polys, s.variables)
        else:
            zeros = reducer.zeros(list(s.polys), s.n)
            form = NbarForm({0: Q**s.n}, {})
            neg: dict = {}
            _add(neg, zeros, -ONE)
            for (gate, sym), c in neg.items():
                if sym is None:
                    form = form + NbarForm({gate: c}, {})
                else:
                    raise ReductionError("affine residuals are not supported in expressions")
        total = total + form.scaled(t.coeff)
    return total


STRATEGIES = (
    {"choice": "order"},
    {"choice": "lookahead"},
)


def run_method1(g: Multigraph, edge_sequence=None, *, mode: str | None = "auto", certify=(2, 3),
                reducer: Reducer | None = None, debug: bool = False,
                max_nodes: int | None = 30000) -> ReductionReport:
    """Reduce C(Psi_g) to a polynomial in q plus residual counts.

    Edges are renamed by their position in the sequence so that earlier edges
    are eliminated first.  mode picks the entry formula ("vertex",
    "vertex_alt", "triangle"), "auto" uses "vertex" when a 3-valent vertex
    exists in a simple 2-connected graph, and None starts from Psi itself.
    The report is checked against independent counts at the ``certify`` orders.

    Without an explicit ``reducer`` the strategies in STRATEGIES are tried in
    turn, each limited to ``max_nodes`` distinct systems, and the report with
    the fewest residuals wins.
    """
    if not is_connected(g):
        raise GraphError("disconnected")
    seq = list(edge_sequence) if edge_sequence is not None else edge_sequence_heuristic(g)
    if sorted(seq) != sorted(g.labels):
        raise ReductionError("edge sequence must be a permutation of the edge labels")
    pos = {e: i + 1 for i, e in enumerate(seq)}
    back = {i: e for e, i in pos.items()}
    h = g.relabeled(pos)
    probe = structural_probe(h)
    entry = None
    if mode == "auto":
        mode = "vertex" if probe.three_valent_vertices and probe.is_simple and probe.vertex_connectivity_ge_2 else None
    if mode is not None:
        verts = probe.three_valent_vertices if mode != "triangle" else probe.triangles_at_3valent
        if not verts:
            raise ReductionError(f"mode {mode} is not applicable to this graph")
        v, es = min(verts, key=lambda ve: (sorted(ve[1]), ve[0]))
        entry = theorem1_entry(h, mode, vertex=v, edges=es)
    if reducer is not None:
        attempts = [reducer]
    else:
        attempts = [Reducer(debug=debug, max_nodes=max_nodes, **cfg) for cfg in STRATEGIES]
    best = None
    for red in attempts:
        before = Counter(red.rules)
        red.eliminated, red._elim_seen = [], set()
        try:
            if entry is None:
                form = red.nbar([graph_polynomial(h)], tuple(sorted(h.labels)))
            else:
                form = reduce_expression(entry, red)
        except WorkExhausted:
            continue
        rules = Counter(red.rules)
        rules.subtract(before)
        cand = (form, red, rules)
        if best is None or len(form.residuals) < len(best[0].residuals):
            best = cand
        if not form.residuals:
            break
    if best is None:
        # every strategy ran out of budget: keep the whole count as one residual
        form = NbarForm({}, {(0, (graph_polynomial(h),)): ONE})
        strategy, rules, eliminated = None, Counter(exhausted=1), []
    else:
        form, red, rules = best
        strategy = {"choice": red.choice, "substitute": red.substitute}
        eliminated = red.eliminated
    trace = {
        "sequence": seq,
        "mode": mode,
        "strategy": strategy,
        "rules": {k: v for k, v in sorted(rules.items()) if v},
        "eliminated": [back.get(x, x) for x in eliminated],
    }
    report = _form_to_report(form, g.n, back, trace)
    for q in certify:
        want = complement(PolySystem((graph_polynomial(g),), tuple(sorted(g.labels))), q, "auto")
        got = report.evaluate(q)
        report.certified[q] = got == want
        if got != want:
            raise ConsistencyError(f"reduction disagrees with counting at q={q}: {got} != {want}")
    return report


def replay(g: Multigraph, trace: dict, **kw) -> ReductionReport:
    """Rerun a reduction from the sequence, mode and strategy recorded in a trace."""
    strategy = trace.get("strategy")
    if strategy and "reducer" not in kw:
        kw["reducer"] = Reducer(**strategy)
    return run_method1(g, trace["sequence"], mode=trace.get("mode"), **kw)
