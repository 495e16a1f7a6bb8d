"""Feynman amplitudes with momenta in a finite field.

Each edge e carries a momentum k_e in F_q^d, a signed sum of loop momenta,
and contributes the propagator quadric Q_e = sum_mu s_mu k_{e,mu}^2 + m^2.
The amplitude is the sum over all loop momenta with every Q_e nonzero of
the product of 1/Q_e.  For q > 2 the same number is the unrestricted sum of
the product of Q_e^(q-2).

Summing over loop momenta directly costs q^(d h1) evaluations.  The vector
(Q_e - m^2)_e is a sum over the d space-time components of independent
contributions, so its distribution on F_q^n is a d-fold convolution of
small distributions; that is the default route for prime fields.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from ._kernels import convolve_distributions
from .gf import FieldSpec, field_of_order, power_sum
from .graphs import GraphError, Multigraph, cycle_rank, is_connected

EXACT = 1 << 62  # modulus large enough to keep convolution counts exact
STATE_LIMIT = 1 << 22
BRUTE_LIMIT = 1 << 22


class AmplitudeError(ValueError):
    pass


@dataclass(frozen=True)
class TheoryConfig:
    d: int
    mass_squared: int = 1
    metric: tuple | None = None

    def __post_init__(self):
        if self.d < 1:
            raise AmplitudeError("dimension must be positive")
        metric = (1,) * self.d if self.metric is None else tuple(self.metric)
        if len(metric) != self.d or any(s not in (1, -1) for s in metric):
            raise AmplitudeError("metric must be d entries of +1 or -1")
        object.__setattr__(self, "metric", metric)

    @classmethod
    def minkowski(cls, d: int, mass_squared: int = 1) -> TheoryConfig:
        return cls(d, mass_squared, (-1,) + (1,) * (d - 1))


def superficial_degree(g: Multigraph, d: int) -> int:
    return d * cycle_rank(g) - 2 * g.n


@dataclass(frozen=True)
class MomentumRouting:
    """coefficients[i][l]: sign of loop momentum l on the i-th edge of g."""

    labels: tuple
    coefficients: tuple
    chords: tuple

    @property
    def loops(self) -> int:
        return len(self.chords)

    def of(self, label) -> tuple:
        return self.coefficients[self.labels.index(label)]

    def conserves(self, g: Multigraph) -> bool:
        """Momentum conservation at every vertex (no external momenta)."""
        for v in range(g.vertex_count):
            total = [0] * self.loops
            for i, (a, b) in enumerate(g.edges):
                if a == b:
                    continue
                sign = 1 if v == b else -1 if v == a else 0
                if sign:
                    total = [t + sign * c for t, c in zip(total, self.coefficients[i])]
            if any(total):
                return False
        return True


def route_momenta(g: Multigraph, seed: int | None = None) -> MomentumRouting:
    """Fundamental-cycle routing for a spanning tree.

    The tree is found by scanning edges in label order, or in a shuffled
    order when ``seed`` is given.  Every chord carries its own loop momentum.
    """
    if not is_connected(g):
        raise GraphError("disconnected")
    order = list(range(g.n))
    if seed is not None:
        random.Random(seed).shuffle(order)
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree, chords = set(), []
    for i in order:
        a, b = g.edges[i]
        ra, rb = find(a), find(b)
        if ra == rb:
            chords.append(i)
        else:
            parent[ra] = rb
            tree.add(i)
    chords.sort()
    adj = {v: [] for v in range(g.vertex_count)}
    for i in tree:
        a, b = g.edges[i]
        adj[a].append((b, i, 1))
        adj[b].append((a, i, -1))

    def path(src, dst):
        # tree path as (edge index, +1 when traversed from its first to its second end)
        prev = {src: None}
        stack = [src]
        while stack:
            u = stack.pop()
            for w, i, s in adj[u]:
                if w not in prev:
                    prev[w] = (u, i, s)
                    stack.append(w)
        out = []
        v = dst
        while prev[v] is not None:
            u, i, s = prev[v]
            out.append((i, s))
            v = u
        return out

    coeffs = [[0] * len(chords) for _ in range(g.n)]
    for l, c in enumerate(chords):
        a, b = g.edges[c]
        coeffs[c][l] = 1
        if a != b:
            for i, s in path(b, a):
                coeffs[i][l] += s
    return MomentumRouting(tuple(g.labels), tuple(tuple(r) for r in coeffs), tuple(g.labels[c] for c in chords))


@dataclass
class Amplitude:
    value: int
    q: int
    excluded: int
    power_form: int | None = None
    tree_convention: bool = False
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"value": self.value, "q": self.q, "excluded": self.excluded,
                "power_form": self.power_form, "tree_convention": self.tree_convention, "notes": self.notes}


def _component_support(routing: MomentumRouting, q: int, sign: int):
    """Distribution of (s k_e^2)_e over one space-time component, as support and counts."""
    h1 = routing.loops
    n = len(routing.labels)
    C = np.array(routing.coefficients, dtype=np.int64).reshape(n, h1)
    pts = np.array(list(product(range(q), repeat=h1)), dtype=np.int64).reshape(-1, h1)
    k = (pts @ C.T) % q
    vals = (sign * k * k) % q
    uniq, counts = np.unique(vals, axis=0, return_counts=True)
    return uniq.astype(np.int64), counts.astype(np.int64)


@lru_cache(maxsize=256)
def _distribution(routing: MomentumRouting, q: int, metric: tuple) -> np.ndarray:
    """Exact counts of each vector sum_mu s_mu (k_{e,mu}^2)_e over F_q^n, q prime."""
    n = len(routing.labels)
    if q**n > STATE_LIMIT:
        raise AmplitudeError(f"{q}^{n} states exceed the convolution limit")
    if not metric:
        dist = np.zeros(q**n, dtype=np.int64)
        dist[0] = 1
        return dist
    prev = _distribution(routing, q, metric[:-1])
    support, counts = _component_support(routing, q, metric[-1])
    add = (np.arange(q)[:, None] + np.arange(q)[None, :]) % q
    return convolve_distributions(prev, support, counts, add.astype(np.int64), q, n, EXACT)


def _weights(q: int, power: bool) -> np.ndarray:
    """1/y with 0 -> 0 (restricted sum), or y^(q-2) (power form)."""
    p = q
    w = np.zeros(q, dtype=np.int64)
    for y in range(1, q):
        w[y] = pow(y, p - 2, p)
    if power and q == 2:
        w[0] = 1  # 0^0
    return w


def _finish(dist: np.ndarray, q: int, n: int, m2: int, power: bool) -> tuple[int, int]:
    states = np.arange(q**n, dtype=np.int64)
    prod_w = np.ones(q**n, dtype=np.int64)
    nonzero = np.ones(q**n, dtype=bool)
    w = _weights(q, power)
    rem = states
    for _ in range(n):
        y = (rem % q + m2) % q
        rem = rem // q
        prod_w = prod_w * w[y] % q
        nonzero &= y != 0
    value = int(((dist % q) * prod_w % q).sum() % q)
    excluded = int(dist[~nonzero].sum())
    return value, excluded


def amplitude(g: Multigraph, theory: TheoryConfig, q: int | FieldSpec, *, method: str = "auto",
              routing: MomentumRouting | None = None) -> Amplitude:
    """The amplitude over F_q; for q > 2 the power form is computed and compared."""
    spec = q if isinstance(q, FieldSpec) else field_of_order(q)
    q = spec.q
    h1 = cycle_rank(g)
    if h1 == 0:
        if not is_connected(g):
            raise GraphError("disconnected")
        return Amplitude(1, q, 0, 1 if q > 2 else None, True, ["tree: empty loop sum taken as 1"])
    routing = routing or route_momenta(g)
    if method == "auto":
        method = "convolution" if spec.is_prime_field and q ** g.n <= STATE_LIMIT else "brute"
    if method == "convolution":
        if not spec.is_prime_field:
            raise AmplitudeError("the convolution route needs a prime field")
        dist = _distribution(routing, q, theory.metric)
        m2 = theory.mass_squared % q
        value, excluded = _finish(dist, q, g.n, m2, False)
        power_form = _finish(dist, q, g.n, m2, True)[0] if q > 2 else None
    elif method == "brute":
        value, excluded, power_form = _brute(routing, theory, spec)
    else:
        raise AmplitudeError(f"unknown method {method!r}")
    if power_form is not None and power_form != value:
        raise AmplitudeError(f"restricted sum {value} and power form {power_form} disagree")
    return Amplitude(value, q, excluded, power_form)


def _brute(routing: MomentumRouting, theory: TheoryConfig, spec: FieldSpec):
    q = spec.q
    h1, d = routing.loops, theory.d
    if q ** (h1 * d) > BRUTE_LIMIT:
        raise AmplitudeError(f"{q}^{h1 * d} loop momenta exceed the enumeration budget")
    m2 = spec.embed(theory.mass_squared)
    sgn = [spec.embed(s) for s in theory.metric]
    total = power = 0
    excluded = 0
    for flat in product(range(q), repeat=h1 * d):
        mom = [flat[l * d:(l + 1) * d] for l in range(h1)]
        prod_inv, prod_pow, hit_zero = 1, 1, False
        for row in routing.coefficients:
            Qe = m2
            for mu in range(d):
                k = 0
                for l, c in enumerate(row):
                    if c:
                        term = mom[l][mu] if c > 0 else spec.neg(mom[l][mu])
                        for _ in range(abs(c) - 1):
                            term = spec.add(term, mom[l][mu] if c > 0 else spec.neg(mom[l][mu]))
                        k = spec.add(k, term)
                Qe = spec.add(Qe, spec.mul(sgn[mu], spec.mul(k, k)))
            if Qe == 0:
                hit_zero = True
            else:
                prod_inv = spec.mul(prod_inv, spec.inv(Qe))
            prod_pow = spec.mul(prod_pow, spec.pow(Qe, q - 2))
        if hit_zero:
            excluded += 1
        else:
            total = spec.add(total, prod_inv)
        power = spec.add(power, prod_pow)
    return total, excluded, (power if q > 2 else None)


def power_form_by_power_sums(g: Multigraph, theory: TheoryConfig, q: int) -> int:
    """Expand prod Q_e^(q-2) into monomials and sum each with the power-sum rule.

    Only meant for tiny cases; prime q.
    """
    import sympy

    spec = field_of_order(q)
    routing = route_momenta(g)
    h1, d = routing.loops, theory.d
    xs = sympy.symbols(f"p0:{h1 * d}")
    expr = sympy.Integer(1)
    for row in routing.coefficients:
        Qe = sympy.Integer(theory.mass_squared)
        for mu in range(d):
            k = sum(c * xs[l * d + mu] for l, c in enumerate(row))
            Qe += theory.metric[mu] * k**2
        expr *= Qe ** (q - 2)
    poly = sympy.Poly(sympy.expand(expr), *xs)
    total = 0
    for exps, coeff in poly.terms():
        term = int(coeff) % q
        for e in exps:
            term = term * power_sum(spec, e).code % q
        total = (total + term) % q
    return total


def vanishing_predicate(g: Multigraph, d: int, q: int) -> bool | None:
    """True when (q-1)c + 2n > 0, which forces the amplitude to vanish; None for q <= 2."""
    if q <= 2:
        return None
    return (q - 1) * superficial_degree(g, d) + 2 * g.n > 0


def vanishing_scan(g: Multigraph, d_range, q_range, mass_squared: int = 1, metric: str = "euclidean") -> list[dict]:
    rows = []
    for d in d_range:
        theory = TheoryConfig.minkowski(d, mass_squared) if metric == "minkowski" else TheoryConfig(d, mass_squared)
        for q in q_range:
            c = superficial_degree(g, d)
            pred = vanishing_predicate(g, d, q)
            amp = amplitude(g, theory, q)
            rows.append({
                "d": d, "q": q, "c": c, "lhs": (q - 1) * c + 2 * g.n,
                "predicate": pred, "value": amp.value, "power_form": amp.power_form,
                "forms_agree": amp.power_form is None or amp.power_form == amp.value,
                "consistent": pred is not True or amp.value == 0,
            })
    return rows
