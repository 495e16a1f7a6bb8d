"""Sparse multivariate integer polynomials and graph polynomials.

A monomial is a sorted tuple of variable ids with repetition, so
``x1^2*x3`` is ``(1, 1, 3)`` and the constant monomial is ``()``.  Variable
ids are edge labels when a polynomial comes from a graph.
"""

from __future__ import annotations

import json
import math
import random
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .graphs import (
    DisconnectedGraphError,
    GraphError,
    Multigraph,
    _trees,
    drop_isolated_vertices,
    is_connected,
    minor,
    spanning_trees,
    structural_probe,
)


class PolyError(ValueError):
    pass


class NotASquareError(PolyError):
    """bc - ad is not a perfect square, so the input is not graph-polynomial-like."""


class ConsistencyError(PolyError):
    pass


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


def _mono_key(m: tuple):
    # graded order: higher degree first, then lex with smaller ids heavier
    return (-len(m), m)


def _mono_div(a: tuple, b: tuple):
    """a / b as a monomial, or None when b does not divide a."""
    if len(b) > len(a):
        return None
    ca = Counter(a)
    cb = Counter(b)
    for v, e in cb.items():
        if ca[v] < e:
            return None
    ca.subtract(cb)
    return tuple(sorted(ca.elements()))


class SparsePoly:
    """Immutable polynomial: dict from monomial tuple to nonzero int coefficient."""

    __slots__ = ("terms", "_hash", "_vars")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None
        self._vars = None

    @classmethod
    def _wrap(cls, terms: dict) -> SparsePoly:
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        p._vars = None
        return p

    @classmethod
    def var(cls, i: int) -> SparsePoly:
        return cls._wrap({(i,): 1})

    @classmethod
    def const(cls, c: int) -> SparsePoly:
        return cls._wrap({(): c} if c else {})

    @classmethod
    def monomial(cls, variables, coeff: int = 1) -> SparsePoly:
        return cls._wrap({tuple(sorted(variables)): coeff} if coeff else {})

    # -- structure --------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePoly.const(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    def leading_term(self) -> tuple[tuple, int]:
        m = min(self.terms, key=_mono_key)
        return m, self.terms[m]

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return self.terms.get((), 0)

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def degree_in(self, v: int) -> int:
        return max((m.count(v) for m in self.terms), default=-1 if not self.terms else 0)

    def variables(self) -> frozenset:
        if self._vars is None:
            self._vars = frozenset(v for m in self.terms for v in m)
        return self._vars

    def is_homogeneous(self) -> bool:
        return len({len(m) for m in self.terms}) <= 1

    def is_multilinear(self) -> bool:
        return all(len(set(m)) == len(m) for m in self.terms)

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
        return g

    def sign_normalized(self) -> SparsePoly:
        if self.terms and self.leading_term()[1] < 0:
            return -self
        return self

    def primitive(self) -> tuple[int, SparsePoly]:
        """(content with the sign of the leading coefficient, primitive part)."""
        if not self.terms:
            return 0, self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        if c == 1:
            return 1, self
        return c, SparsePoly._wrap({m: v // c for m, v in self.terms.items()})

    def monomial_content(self) -> tuple:
        """Largest monomial dividing every term."""
        it = iter(self.terms)
        common = Counter(next(it, ()))
        for m in it:
            common &= Counter(m)
            if not common:
                break
        return tuple(sorted(common.elements()))

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, int):
            return SparsePoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SparsePoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return SparsePoly()
            return SparsePoly._wrap({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = defaultdict(int)
        for mb, cb in b.items():
            for ma, ca in a.items():
                out[_mono_mul(ma, mb)] += ca * cb
        return SparsePoly._wrap({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise PolyError("negative power")
        result = SparsePoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, other) -> SparsePoly | None:
        """Exact quotient self / other, or None if the division leaves a remainder."""
        other = self._coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            c = other.constant_value()
            if any(v % c for v in self.terms.values()):
                return None
            return SparsePoly._wrap({m: v // c for m, v in self.terms.items()})
        lm, lc = other.leading_term()
        rem = dict(self.terms)
        quot = {}
        while rem:
            m = min(rem, key=_mono_key)
            c = rem[m]
            qm = _mono_div(m, lm)
            if qm is None or c % lc:
                return None
            qc = c // lc
            quot[qm] = quot.get(qm, 0) + qc
            for om, oc in other.terms.items():
                key = _mono_mul(qm, om)
                s = rem.get(key, 0) - qc * oc
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return SparsePoly._wrap({m: c for m, c in quot.items() if c})

    def __floordiv__(self, other):
        q = self.exact_div(other)
        if q is None:
            raise PolyError("division is not exact")
        return q

    # -- variables --------------------------------------------------------------

    def coefficients_in(self, v: int) -> list[SparsePoly]:
        """[c0, c1, ...] with self = sum c_k * x_v^k and the c_k free of x_v."""
        buckets = defaultdict(dict)
        for m, c in self.terms.items():
            k = m.count(v)
            rest = tuple(x for x in m if x != v) if k else m
            buckets[k][rest] = c
        top = max(buckets, default=-1)
        return [SparsePoly._wrap(buckets.get(k, {})) for k in range(top + 1)]

    def subs(self, v: int, value) -> SparsePoly:
        value = self._coerce(value)
        coeffs = self.coefficients_in(v)
        out = SparsePoly()
        for c in reversed(coeffs):
            out = out * value + c
        return out

    def subs_many(self, assignment: dict) -> SparsePoly:
        out = self
        for v, val in assignment.items():
            out = out.subs(v, val)
        return out

    def rename(self, mapping: dict) -> SparsePoly:
        return SparsePoly._wrap({tuple(sorted(mapping.get(x, x) for x in m)): c for m, c in self.terms.items()})

    def evaluate(self, point: dict, modulus: int | None = None) -> int:
        total = 0
        for m, c in self.terms.items():
            t = c
            for x in m:
                t *= point[x]
            total += t
        return total % modulus if modulus else total

    def evaluate_field(self, point: dict, spec) -> int:
        """Value in F_q of the polynomial at a point of field codes."""
        total = 0
        for m, c in self.terms.items():
            t = spec.embed(c)
            for x in m:
                t = spec.mul(t, point[x])
            total = spec.add(total, t)
        return total

    def homogenize(self, new_var: int) -> SparsePoly:
        d = self.degree()
        return SparsePoly._wrap({tuple(sorted(m + (new_var,) * (d - len(m)))): c for m, c in self.terms.items()})

    def derivative(self, v: int) -> SparsePoly:
        out = defaultdict(int)
        for m, c in self.terms.items():
            k = m.count(v)
            if k:
                lst = list(m)
                lst.remove(v)
                out[tuple(lst)] += c * k
        return SparsePoly._wrap({m: c for m, c in out.items() if c})

    # -- rendering ---------------------------------------------------------------

    def to_text(self, names=None) -> str:
        if not self.terms:
            return "0"

        def vname(x):
            return names[x] if names else f"x{x}"

        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            factors = [vname(x) + (f"^{e}" if e > 1 else "") for x, e in sorted(Counter(m).items())]
            mag = abs(c)
            body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"SparsePoly({self.to_text()})"

    __str__ = to_text

    def to_json(self) -> list:
        return [[c, [[x, e] for x, e in sorted(Counter(m).items())]] for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> SparsePoly:
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for c, pairs in data:
            m = tuple(sorted(x for x, e in pairs for _ in range(e)))
            terms[m] = terms.get(m, 0) + int(c)
        return cls(terms)


_TERM_RE = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_poly(text: str, names: dict | None = None) -> SparsePoly:
    """Parse the canonical text rendering, e.g. ``x1*x2 - 2*x3^2 + 1``.

    ``names`` maps other variable names (``a``, ``b``...) to ids.
    """
    text = text.strip()
    if not text or text == "0":
        return SparsePoly()
    terms = defaultdict(int)
    pos = 0
    compact = text.replace(" ", "")
    for match in _TERM_RE.finditer(compact):
        if match.start() != pos:
            raise PolyError(f"cannot parse polynomial near {compact[pos:]!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff = sign
        mono = []
        for factor in match.group(2).split("*"):
            if not factor:
                raise PolyError(f"empty factor in {text!r}")
            base, _, exp = factor.partition("^")
            e = int(exp) if exp else 1
            if base.isdigit():
                coeff *= int(base) ** e
            elif names and base in names:
                mono += [names[base]] * e
            elif base.startswith("x") and base[1:].isdigit():
                mono += [int(base[1:])] * e
            else:
                raise PolyError(f"unknown variable {base!r}")
        terms[tuple(sorted(mono))] += coeff
    if pos != len(compact):
        raise PolyError(f"cannot parse polynomial near {compact[pos:]!r}")
    return SparsePoly(terms)


# -- roots and factoring ----------------------------------------------------------


def _int_root(n: int, k: int) -> int | None:
    if n < 0:
        if k % 2 == 0:
            return None
        r = _int_root(-n, k)
        return None if r is None else -r
    r = round(n ** (1.0 / k)) if n < 2**52 else _int_root_big(n, k)
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def _int_root_big(n, k):
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def poly_root(p: SparsePoly, k: int) -> SparsePoly | None:
    """r with r**k == p (leading coefficient positive for even k), else None."""
    if not p.terms:
        return SparsePoly()
    if p.is_constant():
        r = _int_root(p.constant_value(), k)
        return None if r is None else SparsePoly.const(r)
    if p.degree() % k:
        return None
    v = max(p.variables())
    coeffs = p.coefficients_in(v)
    top = len(coeffs) - 1
    if top % k:
        return None
    d = top // k
    lead = poly_root(coeffs[top], k)
    if lead is None:
        return None
    low = min(i for i, c in enumerate(coeffs) if c)
    if low % k:
        return None
    # r = sum_{j<=d} r_j x^j; peel r_{d-1}, ..., r_0 off the top coefficients
    denom = lead ** (k - 1) * k
    partial = {d: lead}
    xv = SparsePoly.var(v)
    for j in range(d - 1, -1, -1):
        r_cur = SparsePoly()
        for i, c in partial.items():
            r_cur = r_cur + c * xv**i
        resid = p - r_cur**k
        target = resid.coefficients_in(v)
        idx = (k - 1) * d + j
        cj = target[idx] if idx < len(target) else SparsePoly()
        rj = cj.exact_div(denom) if cj else SparsePoly()
        if rj is None:
            return None
        partial[j] = rj
    r = SparsePoly()
    for i, c in partial.items():
        r = r + c * xv**i
    if r**k != p:
        return None
    if k % 2 == 0:
        r = r.sign_normalized()
    return r


def poly_sqrt(p: SparsePoly) -> SparsePoly | None:
    """Square root with positive leading coefficient, or None when p is not a square."""
    return poly_root(p, 2)


_EVAL_PRIME = (1 << 61) - 1


def _separable(p: SparsePoly, x: int, y: int, point: dict) -> bool:
    """Numeric test of p * p_xy == p_x * p_y at a random point."""
    P = _EVAL_PRIME
    v = p.evaluate(point, P)
    vx = p.derivative(x)
    vy = p.derivative(y)
    vxy = vx.derivative(y)
    return (v * vxy.evaluate(point, P) - vx.evaluate(point, P) * vy.evaluate(point, P)) % P == 0


def _split_disjoint(p: SparsePoly) -> list[SparsePoly]:
    """Split p into factors on disjoint variable sets (certified by multiplication)."""
    vs = sorted(p.variables())
    if len(vs) < 2:
        return [p]
    rng = random.Random(hash(p) & 0xFFFFFFFF)
    point = {x: rng.randrange(1, _EVAL_PRIME) for x in vs}
    parent = {x: x for x in vs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, x in enumerate(vs):
        for y in vs[i + 1:]:
            if find(x) != find(y) and not _separable(p, x, y, point):
                parent[find(x)] = find(y)
    groups = defaultdict(list)
    for x in vs:
        groups[find(x)].append(x)
    if len(groups) < 2:
        return [p]
    factors = []
    rest = p
    for grp in sorted(groups.values())[:-1]:
        gset = set(grp)
        # coefficient of one fixed "other" monomial, as a polynomial in grp
        by_other = defaultdict(dict)
        for m, c in rest.terms.items():
            own = tuple(x for x in m if x in gset)
            other = tuple(x for x in m if x not in gset)
            by_other[other][own] = c
        sample = SparsePoly(next(iter(by_other.values())))
        _, f = sample.primitive()
        q = rest.exact_div(f)
        if q is None or q.variables() & gset:
            return [p]
        factors.append(f)
        rest = q
    factors.append(rest)
    return factors


@lru_cache(maxsize=200_000)
def partial_factor(p: SparsePoly) -> tuple[SparsePoly, ...]:
    """Cheap factorisation p = c * prod(factors).

    Splits off the integer content, monomial factors (one variable each),
    factors on disjoint variable sets and perfect powers.  The result is not
    guaranteed to be irreducible; a constant factor comes first when != 1.
    """
    if not p.terms:
        return (p,)
    c, prim = p.primitive()
    out: list[SparsePoly] = []
    if c != 1:
        out.append(SparsePoly.const(c))
    mono = prim.monomial_content()
    if mono:
        for x in mono:
            out.append(SparsePoly.var(x))
        prim = prim.exact_div(SparsePoly.monomial(mono))
    if prim.is_constant():
        if prim.constant_value() != 1:
            out.append(prim)
        return tuple(out) if out else (SparsePoly.const(1),)
    for piece in _split_disjoint(prim):
        out.extend(_extract_powers(piece))
    return tuple(out)


def _extract_powers(p: SparsePoly) -> list[SparsePoly]:
    g = 0
    for x in p.variables():
        g = math.gcd(g, p.degree_in(x))
    g = math.gcd(g, p.degree())
    for k in (2, 3, 5, 7):
        if g % k == 0:
            r = poly_root(p, k)
            if r is not None:
                return _extract_powers(r) * k
    return [p]


def factor_full(p: SparsePoly) -> tuple[int, list[tuple[SparsePoly, int]]]:
    """Full factorisation over Z via sympy: (content, [(factor, multiplicity)])."""
    import sympy

    vs = sorted(p.variables())
    if not vs:
        return p.constant_value(), []
    gens = sympy.symbols([f"x{v}" for v in vs])
    index = {v: i for i, v in enumerate(vs)}
    d = {}
    for m, c in p.terms.items():
        e = [0] * len(vs)
        for x in m:
            e[index[x]] += 1
        d[tuple(e)] = c
    poly = sympy.Poly.from_dict(d, *gens, domain="ZZ")
    cont, facs = poly.factor_list()
    out = []
    for f, mult in facs:
        terms = {}
        for exps, c in f.as_dict().items():
            terms[tuple(sorted(v for v, e in zip(vs, exps) for _ in range(e)))] = int(c)
        out.append((SparsePoly(terms), mult))
    return int(cont), out


# -- graph polynomials ---------------------------------------------------------


def graph_polynomial(g: Multigraph) -> SparsePoly:
    """Kirchhoff polynomial: sum over spanning trees of prod of x_e for e not in T."""
    if not is_connected(g):
        raise DisconnectedGraphError()
    labels = tuple(sorted(g.labels))
    terms = {}
    for t in spanning_trees(g):
        terms[tuple(x for x in labels if x not in t)] = terms.get(tuple(x for x in labels if x not in t), 0) + 1
    return SparsePoly(terms)


def dual_polynomial(g: Multigraph) -> SparsePoly:
    """Sum over spanning trees of prod of x_e for e in T."""
    if not is_connected(g):
        raise DisconnectedGraphError()
    terms = defaultdict(int)
    for t in spanning_trees(g):
        terms[tuple(sorted(t))] += 1
    return SparsePoly(terms)


def minor_polynomial(g: Multigraph, deleted=(), contracted=(), dual: bool = False,
                     spare: int | None = None) -> SparsePoly:
    """Graph polynomial of a minor, 0 if the minor is disconnected.

    An isolated vertex counts as a component, except ``spare`` when every
    edge at it was deleted: then the minor is read with that vertex removed.
    Pass the 3-valent vertex here when all of its edges are deleted.
    """
    h = minor(g, deleted=deleted, contracted=contracted)
    gone = set(deleted)
    isolated = [v for v in range(h.vertex_count) if h.degree(v) == 0]
    allowed = 1 if spare is not None and set(g.incident(spare)) <= gone else 0
    if len(isolated) > allowed:
        return SparsePoly()
    h = drop_isolated_vertices(h)
    if not is_connected(h):
        return SparsePoly()
    labels = tuple(sorted(h.labels))
    terms = defaultdict(int)
    for t in _trees(h):
        terms[tuple(sorted(t)) if dual else tuple(x for x in labels if x not in t)] += 1
    return SparsePoly(terms)


def cremona_dual(p: SparsePoly, variables) -> SparsePoly:
    """p(1/x) * prod x_e over the given variables, for p multilinear in them."""
    vs = tuple(sorted(variables))
    out = {}
    for m, c in p.terms.items():
        ms = set(m)
        if len(ms) != len(m):
            raise PolyError("Cremona dual needs a multilinear polynomial")
        out[tuple(x for x in vs if x not in ms)] = c
    return SparsePoly(out)


def bilinear_parts(p: SparsePoly, e: int, f: int) -> tuple[SparsePoly, SparsePoly, SparsePoly, SparsePoly]:
    """(a, b, c, d) with p = a x_e x_f + b x_e + c x_f + d."""
    if p.degree_in(e) > 1 or p.degree_in(f) > 1:
        raise PolyError(f"polynomial is not linear in x{e} and x{f}")
    ce = p.coefficients_in(e) + [SparsePoly()] * 2
    p1, p0 = ce[1], ce[0]
    c1 = p1.coefficients_in(f) + [SparsePoly()] * 2
    c0 = p0.coefficients_in(f) + [SparsePoly()] * 2
    return c1[1], c1[0], c0[1], c0[0]


def delta_pair(p: SparsePoly, e: int, f: int) -> SparsePoly:
    """Delta_{e,f} with ad - bc = -Delta^2, leading coefficient positive."""
    a, b, c, d = bilinear_parts(p, e, f)
    target = b * c - a * d
    r = poly_sqrt(target)
    if r is None:
        raise NotASquareError(f"bc - ad is not a perfect square for edges {e}, {f}")
    return r


@dataclass(frozen=True)
class VertexFace:
    """Minors at a 3-valent vertex with edges (e1, e2, e3)."""

    edges: tuple[int, int, int]
    psi_del_123: SparsePoly  # Gamma - 123
    psi_1_23: SparsePoly  # Gamma - 1 / 23
    psi_2_13: SparsePoly  # Gamma - 2 / 13
    psi_3_12: SparsePoly  # Gamma - 3 / 12
    psi_con_123: SparsePoly  # Gamma / 123
    delta: SparsePoly

    def reconstruct(self) -> SparsePoly:
        x1, x2, x3 = (SparsePoly.var(e) for e in self.edges)
        return (self.psi_del_123 * (x1 * x2 + x1 * x3 + x2 * x3) + self.psi_1_23 * x1
                + self.psi_2_13 * x2 + self.psi_3_12 * x3 + self.psi_con_123)


def vertex_face_decomposition(g: Multigraph, v: int, edges: tuple[int, int, int] | None = None) -> VertexFace:
    """Five minors at the 3-valent vertex v and the half-integral combination Delta.

    Checks integrality of Delta and the identity
    Psi_{-123} Psi_{/123} - Psi_{-1/23} Psi_{-2/13} = -Delta^2.
    """
    if edges is None:
        inc = sorted(g.incident(v))
        if len(inc) != 3 or g.degree(v) != 3:
            raise GraphError(f"vertex {v} is not 3-valent")
        edges = tuple(inc)
    e1, e2, e3 = edges
    p123 = minor_polynomial(g, deleted=(e1, e2, e3), spare=v)
    p1 = minor_polynomial(g, deleted=(e1,), contracted=(e2, e3))
    p2 = minor_polynomial(g, deleted=(e2,), contracted=(e1, e3))
    p3 = minor_polynomial(g, deleted=(e3,), contracted=(e1, e2))
    pc = minor_polynomial(g, contracted=(e1, e2, e3))
    twice = p1 + p2 - p3
    delta = twice.exact_div(2)
    if delta is None:
        raise ConsistencyError("Delta is not integral")
    if p123 * pc - p1 * p2 != -(delta * delta):
        raise ConsistencyError("vertex identity Psi123*Psi/123 - Psi1/23*Psi2/13 = -Delta^2 fails")
    return VertexFace(tuple(edges), p123, p1, p2, p3, pc, delta)


def triangle_delta(g: Multigraph, edges: tuple[int, int, int, int]) -> SparsePoly:
    """delta for a 3-valent vertex (1, 2, 3) whose edges 2, 3, 4 form a triangle."""
    e1, e2, e3, e4 = edges
    (v,) = set(g.endpoints(e1)) & set(g.endpoints(e2)) & set(g.endpoints(e3))
    a = minor_polynomial(g, deleted=(e1, e2, e3), contracted=(e4,), spare=v)
    b = minor_polynomial(g, deleted=(e2, e4), contracted=(e1, e3))
    c = minor_polynomial(g, deleted=(e3, e4), contracted=(e1, e2))
    d = (a + b - c).exact_div(2)
    if d is None:
        raise ConsistencyError("delta is not integral")
    p1234 = minor_polynomial(g, deleted=(e1, e2, e3, e4), spare=v)
    p2_134 = minor_polynomial(g, deleted=(e2,), contracted=(e1, e3, e4))
    if p1234 * p2_134 - a * b != -(d * d):
        raise ConsistencyError("triangle identity fails")
    return d


QUARTIC_VARS = {"a": 1, "b": 2, "c": 3, "d": 4}


def quartic_f() -> SparsePoly:
    """The degree-4 surface a^2b^2 + a^2bc + ... + c^2d^2 (12 terms) in a,b,c,d = x1..x4."""
    text = ("a^2*b^2 + a^2*b*c + a^2*b*d + a^2*c*d + a*b^2*c + a*b*c^2 + a*b*c*d"
            " + a*b*d^2 + a*c^2*d + a*c*d^2 + b*c^2*d + c^2*d^2")
    return parse_poly(text, QUARTIC_VARS)


def is_graph_polynomial_like(p: SparsePoly) -> bool:
    return p.is_homogeneous() and p.is_multilinear()


__all__ = [
    "SparsePoly", "PolyError", "NotASquareError", "ConsistencyError", "parse_poly", "poly_sqrt",
    "poly_root", "partial_factor", "factor_full", "graph_polynomial", "dual_polynomial",
    "minor_polynomial", "cremona_dual", "bilinear_parts", "delta_pair", "VertexFace",
    "vertex_face_decomposition", "triangle_delta", "quartic_f", "structural_probe", "GraphError",
]
