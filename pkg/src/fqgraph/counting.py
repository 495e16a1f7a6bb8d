"""Point counting over finite fields.

Exhaustive enumeration (sharded, budget-guarded), the projective complement
count, a memoised recursive counter for systems that are linear in some
variable, c2 extraction and the prime scan of the quartic surface.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .gf import FieldError, FieldSpec, field_of_order, is_prime, make_field
from .graphs import Multigraph, cycle_rank, structural_probe
from .polynomials import SparsePoly, graph_polynomial, partial_factor, quartic_f, vertex_face_decomposition

BUDGET = 2**36


class BudgetExceeded(RuntimeError):
    def __init__(self, evaluations: int, shards_needed: int, budget: int = BUDGET):
        self.evaluations = evaluations
        self.shards_needed = shards_needed
        super().__init__(
            f"{evaluations} point evaluations exceed the budget of {budget}; "
            f"rerun with at least {shards_needed} shards"
        )


class CountError(ValueError):
    pass


@dataclass(frozen=True)
class PolySystem:
    """Polynomials together with the space they are counted in.

    ``variables`` fixes the coordinates; variables listed but absent from
    every polynomial are free coordinates.  For a projective system the
    ambient space is P^(len(variables) - 1).
    """

    polys: tuple
    variables: tuple
    ambient: str = "projective"

    def __post_init__(self):
        if self.ambient not in ("projective", "affine"):
            raise CountError(f"unknown ambient {self.ambient!r}")
        object.__setattr__(self, "polys", tuple(self.polys))
        object.__setattr__(self, "variables", tuple(self.variables))
        used = set()
        for f in self.polys:
            used |= f.variables()
        if not used <= set(self.variables):
            raise CountError(f"variables {sorted(used - set(self.variables))} are not coordinates of the system")
        if len(set(self.variables)) != len(self.variables):
            raise CountError("duplicate coordinates")

    @classmethod
    def of(cls, polys, ambient="projective", variables=None):
        polys = tuple(polys)
        if variables is None:
            vs = set()
            for f in polys:
                vs |= f.variables()
            variables = tuple(sorted(vs))
        return cls(polys, tuple(variables), ambient)

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def dim(self) -> int:
        return self.n - 1 if self.ambient == "projective" else self.n

    def is_homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.polys)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "variables": list(self.variables),
            "polys": [f.to_json() for f in self.polys],
        }

    @classmethod
    def from_json(cls, data) -> PolySystem:
        return cls(tuple(SparsePoly.from_json(p) for p in data["polys"]), tuple(data["variables"]), data["ambient"])

    def system_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def read_system(text: str, ambient: str = "projective") -> PolySystem:
    """Polynomial file: one polynomial per line; optional "vars x1 x2 ..." and
    "ambient projective|affine" header lines; '#' starts a comment."""
    from .polynomials import parse_poly

    polys, variables = [], None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "vars":
            variables = tuple(int(t.lstrip("x")) for t in rest.split())
        elif head == "ambient":
            ambient = rest.strip()
        else:
            polys.append(parse_poly(line))
    return PolySystem.of(polys, ambient, variables)


# -- compiling systems to kernel arrays ------------------------------------------------------


def _pow_table(spec: FieldSpec, max_exp: int) -> np.ndarray:
    if spec.is_prime_field:
        p = spec.p
        out = np.empty((p, max_exp + 1), dtype=np.int64)
        out[:, 0] = 1
        base = np.arange(p, dtype=np.int64)
        for e in range(1, max_exp + 1):
            out[:, e] = out[:, e - 1] * base % p
        return out
    return spec.pow_table(max_exp)


@dataclass
class Compiled:
    n: int
    coef: np.ndarray
    exps: np.ndarray
    poly_start: np.ndarray
    constant_zero: bool  # some polynomial is a nonzero constant in F_q


def compile_system(polys, variables, spec: FieldSpec) -> Compiled:
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    coef, rows, starts = [], [], [0]
    impossible = False
    for f in polys:
        kept = 0
        for m, c in f.sorted_terms():
            code = spec.embed(c)
            if code == 0:
                continue
            row = [0] * max(n, 1)
            for x in m:
                row[index[x]] += 1
            coef.append(code)
            rows.append(row)
            kept += 1
        if kept == 0:
            # zero polynomial imposes nothing
            continue
        if kept == 1 and not any(rows[-1]):
            impossible = True
        starts.append(starts[-1] + kept)
    coef_arr = np.array(coef, dtype=np.int64)
    exps = np.array(rows, dtype=np.int64).reshape(len(rows), max(n, 1))
    return Compiled(n, coef_arr, exps, np.array(starts, dtype=np.int64), impossible)


def _field_tables(spec: FieldSpec):
    if spec.is_prime_field:
        dummy = np.zeros((1, 1), dtype=np.int64)
        return dummy, dummy
    if spec.q > 1024:
        raise FieldError("extension fields are enumerated only for q <= 1024")
    return spec.tables()


def _as_spec(fld) -> FieldSpec:
    if isinstance(fld, FieldSpec):
        return fld
    return field_of_order(int(fld))


def _shard_range(total: int, shard) -> tuple[int, int]:
    if shard is None:
        return 0, total
    i, k = shard
    if not (0 <= i < k):
        raise CountError(f"bad shard {i}/{k}")
    return i * total // k, (i + 1) * total // k


def _zeros_compiled(comp: Compiled, spec: FieldSpec, shard=None, budget: int = BUDGET) -> int:
    q = spec.q
    if comp.constant_zero:
        return 0
    if comp.n == 0:
        return 1 if (shard is None or shard[0] == 0) else 0
    outer = q ** (comp.n - 1)
    evaluations = outer * q
    start, stop = _shard_range(outer, shard)
    if (stop - start) * q > budget:
        raise BudgetExceeded(evaluations, -(-evaluations // budget), budget)
    if comp.coef.size == 0:
        return (stop - start) * q
    maxexp = int(comp.exps.max()) if comp.exps.size else 0
    powt = _pow_table(spec, max(maxexp, 1))
    add, mul = _field_tables(spec)
    if shard is None and comp.n >= 3 and len(comp.poly_start) == 2 and int(comp.exps[:, -2:].max()) <= 1:
        # one polynomial linear in the last two coordinates: count planes in closed form
        return _kernels.count_zeros_bilinear(q, spec.is_prime_field, comp.n, comp.coef, comp.exps, powt,
                                             add, mul, 0, q ** (comp.n - 2))
    return _kernels.count_zeros(q, spec.is_prime_field, comp.n, comp.coef, comp.exps, comp.poly_start,
                                powt, add, mul, start, stop)


def count_affine(system: PolySystem, fld, shard=None, budget: int = BUDGET) -> int:
    """Number of common zeros of the system in F_q^n, n = number of coordinates.

    With ``shard=(i, k)`` only the i-th of k slices of the outer coordinates is
    counted; the k partial counts sum to the full count.
    """
    spec = _as_spec(fld)
    comp = compile_system(system.polys, system.variables, spec)
    return _zeros_compiled(comp, spec, shard, budget)


def projective_size(k: int, q: int) -> int:
    """Number of points of P^(k-1)(F_q); 0 for k = 0."""
    return (q**k - 1) // (q - 1)


def projective_zeros(system: PolySystem, fld, budget: int = BUDGET) -> int:
    """Common zeros in P^(n-1)(F_q), enumerated chart by chart."""
    spec = _as_spec(fld)
    vs = system.variables
    total = 0
    for j in range(len(vs)):
        assign = {v: 0 for v in vs[:j]}
        assign[vs[j]] = 1
        polys = [f.subs_many({v: a for v, a in assign.items() if v in f.variables()}) for f in system.polys]
        comp = compile_system(polys, vs[j + 1:], spec)
        total += _zeros_compiled(comp, spec, None, budget)
    return total


def _check_homogeneous(system: PolySystem):
    if system.ambient != "projective":
        raise CountError("projective count needs a projective system")
    if not system.is_homogeneous():
        raise CountError("projective count needs homogeneous polynomials")


def count_projective_complement(system: PolySystem, fld, method: str = "charts", budget: int = BUDGET) -> int:
    """Points of P^(n-1)(F_q) where some polynomial of the system is nonzero."""
    _check_homogeneous(system)
    spec = _as_spec(fld)
    q, n = spec.q, system.n
    if method == "charts":
        return projective_size(n, q) - projective_zeros(system, spec, budget)
    zeros = count_affine(system, spec, budget=budget)
    return complement_from_affine(zeros, n, q, _has_unit_constant(system, spec))


def _has_unit_constant(system: PolySystem, spec: FieldSpec) -> bool:
    return any(f.is_constant() and spec.embed(f.constant_value()) for f in system.polys)


def complement_from_affine(zeros: int, n: int, q: int, unit_constant: bool = False) -> int:
    """(q^n - N)/(q - 1), the origin removed when a constant does not vanish."""
    num = q**n - zeros - (1 if unit_constant else 0)
    if num % (q - 1):
        raise CountError(f"non-integral projective count ({num} / {q - 1}): counting bug")
    return num // (q - 1)


def affine_projective_swap(system: PolySystem, var: int | None = None) -> tuple[PolySystem, PolySystem]:
    """Split P^(n-1) along the hyperplane x = 0.

    Returns the boundary system (x = 0, projective in the other coordinates)
    and the dehomogenised system (x = 1, affine).  The complement count of the
    input is the boundary complement plus the affine complement of the second.
    """
    _check_homogeneous(system)
    if var is None:
        var = system.variables[0]
    rest = tuple(v for v in system.variables if v != var)
    boundary = PolySystem(tuple(f.subs(var, 0) for f in system.polys), rest, "projective")
    chart = PolySystem(tuple(f.subs(var, 1) for f in system.polys), rest, "affine")
    return boundary, chart


def affine_complement(system: PolySystem, fld) -> int:
    spec = _as_spec(fld)
    return spec.q**system.n - count_affine(system, spec)


# -- recursive counter for systems linear in a variable ----------------------------------------


def _reduce_mod(f: SparsePoly, p: int) -> SparsePoly:
    terms = {}
    for m, c in f.terms.items():
        r = c % p
        if r:
            terms[m] = r if 2 * r <= p else r - p
    return SparsePoly(terms)


def _monic_mod(f: SparsePoly, p: int) -> SparsePoly:
    f = _reduce_mod(f, p)
    if not f.terms:
        return f
    _, lc = f.leading_term()
    if lc % p == 1:
        return f
    inv = pow(lc, -1, p)
    return _reduce_mod(f * inv, p)


def _canonical(polys, p: int) -> tuple | None:
    """Normalised system over Z, or None when a constant is a unit mod p.

    Polynomials vanishing mod p are dropped, contents coprime to p divided
    out, repeated factors and multiples of other members removed.  The
    integer form is kept so that factorisations over Z stay visible.
    """
    seen = set()
    for f in polys:
        if not f.terms:
            continue
        c = f.content()
        if c % p == 0:
            continue
        if f.is_constant():
            return None
        g = f if c == 1 else f.exact_div(c)
        seen.add(_radical(g.sign_normalized()))
    items = sorted(seen, key=lambda f: (len(f), f.degree(), f.to_text()))
    kept = []
    for f in items:
        if any(len(g) <= len(f) and g.degree() <= f.degree() and g.variables() <= f.variables()
               and f.exact_div(g) is not None for g in kept):
            continue
        kept.append(f)
    return tuple(sorted(kept, key=lambda f: f.to_text()))


def _radical(f: SparsePoly) -> SparsePoly:
    """Product of the distinct non-constant factors found by partial_factor."""
    if len(f) == 1:
        return SparsePoly.monomial(sorted(set(f.leading_term()[0])))
    factors = [h.sign_normalized() for h in partial_factor(f) if not h.is_constant()]
    distinct = set(factors)
    if len(distinct) == len(factors):
        return f
    out = SparsePoly.const(1)
    for h in sorted(distinct, key=lambda h: h.to_text()):
        out = out * h
    return out


def _linear_variables(polys) -> list:
    vs = set()
    for f in polys:
        vs |= f.variables()
    return sorted(v for v in vs if all(f.degree_in(v) <= 1 for f in polys))


@lru_cache(maxsize=100_000)
def _full_factors(f: SparsePoly) -> tuple:
    """Distinct-with-multiplicity non-constant factors over Z (sympy)."""
    from .polynomials import factor_full

    if len(f) <= 2 or f.degree() <= 1:
        return tuple(h for h in partial_factor(f) if not h.is_constant())
    _, facs = factor_full(f)
    out = []
    for h, mult in facs:
        out.extend([h] * mult)
    return tuple(out)


class MultilinearCounter:
    """Affine zero counts by recursive elimination of linear variables.

    For f_i = a_i x + b_i the fibre over a point of the other coordinates has
    q points when all a_i, b_i vanish, one point when the a_i do not all
    vanish and every 2x2 minor a_i b_j - a_j b_i vanishes, and none otherwise:

        N(F) = q N(A, B) + N(M) - N(A).
    """

    def __init__(self, spec: FieldSpec, brute_budget: int = 2**26, pivot: bool = False, pair_limit: int = 10**9,
                 brute_threshold: int = 5 * 10**7, factor_threshold: int = 10**6):
        self.spec = spec
        self.q = spec.q
        self.p = spec.p
        self.memo: dict = {}
        self.brute_budget = brute_budget
        self.pivot = pivot
        self.pair_limit = pair_limit
        self.brute_threshold = brute_threshold
        self.factor_threshold = factor_threshold
        self.brute_calls = 0
        self.brute_sizes = []

    def zeros(self, polys, nvars: int) -> int:
        """Common zeros in F_q^nvars of polynomials whose variables number at most nvars."""
        key = _canonical(polys, self.p)
        if key is None:
            return 0
        used = set()
        for f in key:
            used |= f.variables()
        return self.q ** (nvars - len(used)) * self._count(key)

    def _count(self, key: tuple) -> int:
        if not key:
            return 1
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        val = self._compute(key)
        self.memo[key] = val
        return val

    def _choose_pivot(self, polys):
        best = None
        for idx, f in enumerate(polys):
            for v in f.variables():
                if f.degree_in(v) != 1:
                    continue
                cost = (sum(max(h.degree_in(v), 0) for h in polys), len(f.coefficients_in(v)[1]), len(f), v)
                if best is None or cost < best[0]:
                    best = (cost, idx, v)
        return None if best is None else best[1:]

    def _pivot_step(self, polys, idx, v, k):
        """Solve f = g1 x - g0 for x and substitute into the others:

            N(f, F) = N(g1, g0, F) + N(hbar) - N(g1, hhat)

        with hbar = sum h_i g0^i g1^(d-i) and hhat = h_d g0 (h_0 when d = 0).
        """
        f = polys[idx]
        cs = f.coefficients_in(v)
        g1, g0 = cs[1], -cs[0]
        rest = [h for j, h in enumerate(polys) if j != idx]
        hbar, hhat = [], []
        for h in rest:
            hc = h.coefficients_in(v)
            d = len(hc) - 1
            acc = SparsePoly()
            for i, c in enumerate(hc):
                if c:
                    acc = acc + c * g0**i * g1 ** (d - i)
            hbar.append(acc)
            hhat.append(hc[d] * g0 if d >= 1 else hc[0])
        return (self._sub([g1, g0] + rest, k) + self._sub(hbar, k - 1)
                - self._sub([g1] + hhat, k - 1))

    def _sub(self, polys, nvars):
        return self.zeros(polys, nvars)

    def _compute(self, polys: tuple) -> int:
        q, p = self.q, self.p
        used = set()
        for f in polys:
            used |= f.variables()
        k = len(used)
        # a linear polynomial with unit coefficient lets us solve for its variable
        for idx, f in enumerate(polys):
            for v in sorted(f.variables()):
                cs = f.coefficients_in(v)
                if len(cs) == 2 and cs[1].is_constant() and cs[1].constant_value() in (1, -1):
                    value = -cs[0] * cs[1].constant_value()
                    rest = [g.subs(v, value) for j, g in enumerate(polys) if j != idx]
                    return self._sub(rest, k - 1)
        # split products: N(g h, F) = N(g, F) + N(h, F) - N(g, h, F)
        for idx, f in enumerate(polys):
            factors = [h for h in partial_factor(f) if not h.is_constant()]
            if len(factors) > 1:
                g = factors[0]
                h = SparsePoly.const(1)
                for x in factors[1:]:
                    h = h * x
                rest = [u for j, u in enumerate(polys) if j != idx]
                return (self._sub(rest + [g], k) + self._sub(rest + [h], k)
                        - self._sub(rest + [g, h], k))
        lin = _linear_variables(polys)
        if lin and (len(polys) <= self.pair_limit or not self.pivot):
            v = min(lin, key=lambda x: (sum(1 for f in polys if f.degree_in(x) == 1), x))
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
            return q * self._sub(A + B, k - 1) + self._sub(M, k - 1) - self._sub(A, k - 1)
        cost = self.q ** (k - 1) * sum(len(f) for f in polys)
        if cost > self.factor_threshold:
            # expensive leaf: look for a factorisation partial_factor missed
            for idx, f in enumerate(polys):
                factors = _full_factors(f)
                if len(factors) > 1:
                    g, h = factors[0], SparsePoly.const(1)
                    for x in factors[1:]:
                        h = h * x
                    rest = [u for j, u in enumerate(polys) if j != idx]
                    return (self._sub(rest + [g], k) + self._sub(rest + [h], k)
                            - self._sub(rest + [g, h], k))
        if self.pivot and cost > self.brute_threshold:
            pivot = self._choose_pivot(polys)
            if pivot is not None:
                return self._pivot_step(polys, *pivot, k)
        self.brute_calls += 1
        self.brute_sizes.append(k)
        vs = tuple(sorted(used))
        comp = compile_system(polys, vs, self.spec)
        return _zeros_compiled(comp, self.spec, None, self.brute_budget)


@lru_cache(maxsize=64)
def _counter(q: int) -> MultilinearCounter:
    return MultilinearCounter(field_of_order(q))


def count_multilinear(system: PolySystem, fld) -> int:
    """Same value as the enumeration counters: affine zeros for an affine
    system, the complement count for a projective one."""
    spec = _as_spec(fld)
    counter = _counter(spec.q) if spec == field_of_order(spec.q) else MultilinearCounter(spec)
    zeros = counter.zeros(system.polys, system.n)
    if system.ambient == "affine":
        return zeros
    _check_homogeneous(system)
    return complement_from_affine(zeros, system.n, spec.q, _has_unit_constant(system, spec))


def nbar(polys, variables, q: int, method: str = "auto") -> int:
    """Projective complement count of polynomials in the given coordinates."""
    system = PolySystem(tuple(polys), tuple(variables), "projective")
    if method == "auto":
        method = "multilinear"
    if method == "multilinear":
        return count_multilinear(system, q)
    return count_projective_complement(system, q, method=method)


def graph_nbar(g: Multigraph, q: int, method: str = "multilinear") -> int:
    psi = graph_polynomial(g)
    return nbar([psi], tuple(sorted(g.labels)), q, method)


# -- c2 ---------------------------------------------------------------------------


@dataclass
class C2Result:
    q: int
    full: int | None  # route (a): N-bar / q^2 mod q
    vertex: int | None  # route (b): N-bar(Psi_{-123}, Delta) mod q
    nbar: int | None = None
    notes: list = field(default_factory=list)

    @property
    def value(self) -> int:
        return self.full if self.full is not None else self.vertex


def c2_invariant(g: Multigraph, fld, routes=("full", "vertex"), method: str = "multilinear") -> C2Result:
    """c2 = N-bar / q^2 mod q, computed from the full count and, when the graph
    has a 3-valent vertex, from the two-polynomial count at that vertex."""
    spec = _as_spec(fld)
    q = spec.q
    res = C2Result(q, None, None)
    if "full" in routes:
        nb = graph_nbar(g, q, method)
        if nb % (q * q):
            raise CountError(f"N-bar = {nb} is not divisible by q^2 = {q * q}")
        res.nbar = nb
        res.full = (nb // (q * q)) % q
    probe = structural_probe(g)
    if "vertex" in routes and probe.three_valent_vertices and probe.is_simple and probe.vertex_connectivity_ge_2:
        v, edges = probe.three_valent_vertices[0]
        vf = vertex_face_decomposition(g, v, edges)
        rest = tuple(sorted(set(g.labels) - set(edges)))
        res.vertex = nbar([vf.psi_del_123, vf.delta], rest, q, method) % q
        res.notes.append(f"vertex {v} edges {edges}")
        if res.full is not None and res.full != res.vertex:
            raise CountError(f"c2 routes disagree at q={q}: {res.full} vs {res.vertex}")
    if res.full is None and res.vertex is None:
        raise CountError("no c2 route applies")
    return res


# -- the quartic surface over prime fields ------------------------------------------------


@dataclass
class Result4Row:
    p: int
    nbar_mod_p: int
    k: int | None
    ratio: float
    expected_zero: bool
    ok: bool


def quartic_nbar(p: int, method: str = "auto") -> int:
    """Complement count of the quartic in P^3(F_p)."""
    if method == "auto":
        method = "enumerate" if p <= 199 else "fibres"
    total = projective_size(4, p)
    if method == "fibres":
        if p == 2:
            raise CountError("the fibre method needs an odd prime")
        return total - _kernels.quartic_projective_zeros(p)
    f = quartic_f()
    return total - projective_zeros(PolySystem((f,), (1, 2, 3, 4)), make_field(p))


def solve_k(p: int, residue: int) -> int | None:
    """k in 0..floor(sqrt(p/7)) with 28 k^2 = residue mod p, if any."""
    kmax = math.isqrt(p // 7) if p >= 7 else 0
    while 7 * (kmax + 1) ** 2 <= p:
        kmax += 1
    for k in range(kmax + 1):
        if (28 * k * k - residue) % p == 0:
            return k
    return None


def result4_scan(p_max: int, method: str = "auto", p_min: int = 3) -> list[Result4Row]:
    """For each odd prime p <= p_max: N-bar(f) mod p, the k(p) solving
    28 k^2 = N-bar mod p, and whether k(p) = 0 exactly when p = 7 or
    p = 3, 5, 6 mod 7.  A missing k is kept as a failing row."""
    if p_max < 3:
        raise CountError("p_max must be at least 3")
    rows = []
    for p in range(max(3, p_min), p_max + 1):
        if not is_prime(p):
            continue
        r = quartic_nbar(p, method) % p
        k = solve_k(p, r)
        expected_zero = p == 7 or p % 7 in (3, 5, 6)
        ok = k is not None and ((k == 0) == expected_zero)
        rows.append(Result4Row(p, r, k, 7 * k * k / p if k is not None else float("nan"), expected_zero, ok))
    return rows


def sup_ratio(rows) -> float:
    vals = [r.ratio for r in rows if r.k is not None]
    return max(vals, default=0.0)


# -- jobs and shard merging -------------------------------------------------------------


@dataclass(frozen=True)
class CountJob:
    system: PolySystem
    field: FieldSpec
    shard: tuple | None = None

    def run(self, budget: int = BUDGET) -> dict:
        zeros = count_affine(self.system, self.field, self.shard, budget)
        out = {"q": self.field.q, "N": zeros, "system_hash": self.system.system_hash(),
               "n": self.system.n, "ambient": self.system.ambient}
        if self.shard is None:
            out["Nbar"] = _finish_nbar(self.system, self.field, zeros)
        else:
            out["shard"] = list(self.shard)
            out["Nbar"] = None
        return out


def _finish_nbar(system: PolySystem, spec: FieldSpec, zeros: int):
    if system.ambient != "projective":
        return spec.q**system.n - zeros
    return complement_from_affine(zeros, system.n, spec.q, _has_unit_constant(system, spec))


def merge_shards(results: list[dict], system: PolySystem | None = None) -> dict:
    """Sum shard results after checking they cover one system exactly once."""
    if not results:
        raise CountError("nothing to merge")
    hashes = {r["system_hash"] for r in results}
    qs = {r["q"] for r in results}
    if len(hashes) != 1 or len(qs) != 1:
        raise CountError("shard results belong to different systems or fields")
    if system is not None and system.system_hash() not in hashes:
        raise CountError("shard results do not match the given system")
    totals = {r["shard"][1] for r in results}
    idx = sorted(r["shard"][0] for r in results)
    if len(totals) != 1 or idx != list(range(totals.pop())):
        raise CountError("shards do not partition the enumeration")
    first = results[0]
    zeros = sum(r["N"] for r in results)
    q, n = first["q"], first["n"]
    out = {"q": q, "N": zeros, "system_hash": first["system_hash"], "n": n, "ambient": first["ambient"]}
    if first["ambient"] == "projective":
        unit = bool(system is not None and _has_unit_constant(system, field_of_order(q)))
        out["Nbar"] = complement_from_affine(zeros, n, q, unit)
    else:
        out["Nbar"] = q**n - zeros
    return out


__all__ = [
    "BUDGET", "BudgetExceeded", "CountError", "PolySystem", "CountJob", "read_system", "count_affine",
    "count_projective_complement", "projective_zeros", "projective_size", "complement_from_affine",
    "affine_projective_swap", "affine_complement", "MultilinearCounter", "count_multilinear", "nbar",
    "graph_nbar", "c2_invariant", "C2Result", "result4_scan", "quartic_nbar", "solve_k", "sup_ratio",
    "merge_shards", "cycle_rank", "partial_factor",
]
