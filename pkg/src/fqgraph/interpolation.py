"""Polynomials in q, reconstruction from small-field samples, and zeta functions.

Counts of graph hypersurface complements are frequently polynomials in q with
small integer coefficients.  Given counts at a few coprime field orders the
coefficients are peeled off one at a time by the Chinese remainder theorem,
choosing the representative of smallest absolute value at each level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "QPolynomial",
    "Candidate",
    "Reconstruction",
    "crt",
    "crt_reconstruct",
    "residue_class_reconstruct",
    "parse_samples",
    "ZetaFunction",
    "zeta_function",
    "zeta_point_counts",
]


class QPolynomial:
    """Integer polynomial in one variable q, coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def q(cls, power: int = 1) -> QPolynomial:
        return cls([0] * power + [1])

    @classmethod
    def const(cls, c: int) -> QPolynomial:
        return cls([c])

    @classmethod
    def projective(cls, k: int) -> QPolynomial:
        """[k]_q = 1 + q + ... + q^(k-1), the size of P^(k-1)."""
        return cls([1] * k)

    @classmethod
    def from_pairs(cls, pairs) -> QPolynomial:
        """From [[coeff, power], ...] as in the JSON reports."""
        top = max((p for _, p in pairs), default=-1)
        cs = [0] * (top + 1)
        for c, p in pairs:
            cs[p] += c
        return cls(cs)

    def pairs(self) -> list[list[int]]:
        return [[c, i] for i, c in enumerate(self.coeffs) if c]

    @staticmethod
    def _lift(other) -> QPolynomial:
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, int):
            return QPolynomial([other])
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = QPolynomial._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = QPolynomial._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return QPolynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = QPolynomial._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = QPolynomial._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = QPolynomial([1])
        for _ in range(e):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, q: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * q + c
        return v

    def divmod_linear(self, root: int = 1) -> tuple[QPolynomial, int]:
        """Synthetic division by (q - root): quotient and the remainder value."""
        if not self.coeffs:
            return QPolynomial(), 0
        cs = list(self.coeffs)
        out = [0] * (len(cs) - 1)
        acc = 0
        for i in range(len(cs) - 1, -1, -1):
            acc = acc * root + cs[i]
            if i:
                out[i - 1] = acc
        return QPolynomial(out), acc

    def shift(self, k: int) -> QPolynomial:
        """Multiply by q^k."""
        return QPolynomial([0] * k + list(self.coeffs)) if self.coeffs else QPolynomial()

    def to_text(self, symbol: str = "q") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (symbol if i == 1 else f"{symbol}^{i}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s0, b0 = parts[0]
        text = ("-" if s0 == "-" else "") + b0
        for s, b in parts[1:]:
            text += f" {s} {b}"
        return text

    def __repr__(self):
        return f"QPolynomial({self.to_text()})"

    @classmethod
    def parse(cls, text: str, symbol: str = "q") -> QPolynomial:
        from .polynomials import parse_poly

        p = parse_poly(text, {symbol: 0})
        cs = [0] * (p.degree() + 1 if p.terms else 0)
        for mono, c in p.terms.items():
            cs[len(mono)] += c
        return cls(cs)


# -- Chinese remainder reconstruction ---------------------------------------------------


def crt(residues, moduli) -> tuple[int, int]:
    """Combine x = r_i mod m_i for pairwise coprime m_i; returns (r, M)."""
    r, M = 0, 1
    for a, m in zip(residues, moduli):
        if math.gcd(M, m) != 1:
            raise ValueError(f"moduli not coprime: {M} and {m}")
        t = ((a - r) * pow(M, -1, m)) % m
        r += M * t
        M *= m
    return r % M, M


def _representatives(r: int, M: int, branching: int, factor: float) -> list[int]:
    """Smallest-magnitude representatives of r mod M, in order of magnitude.

    The second and later ones are kept only if within `factor` of the first.
    """
    lo = r % M
    cands = sorted({lo, lo - M, lo + M, lo - 2 * M}, key=lambda x: (abs(x), x))
    out = [cands[0]]
    for c in cands[1:]:
        if len(out) >= branching:
            break
        if abs(c) <= factor * max(abs(cands[0]), 1):
            out.append(c)
    return out


@dataclass
class Candidate:
    poly: QPolynomial
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"poly": self.poly.to_text(), "coeffs": list(self.poly.coeffs), "checks": self.checks}


@dataclass
class Reconstruction:
    candidates: list
    moduli: list
    start: int
    explored: int

    @property
    def verdict(self) -> str:
        if not self.candidates:
            return "not a polynomial over these samples"
        return "polynomial" if len(self.candidates) == 1 else "ambiguous"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "moduli": self.moduli,
            "start": self.start,
            "explored": self.explored,
            "candidates": [c.to_json() for c in self.candidates],
        }


def crt_reconstruct(samples, degree: int, *, graph_form: bool = True, start: int | None = None,
                    branching: int = 2, factor: float = 4.0, verify=(), max_candidates: int = 10_000
                    ) -> Reconstruction:
    """Candidate integer polynomials of the given degree through (q, value) samples.

    The sample orders must be pairwise coprime.  With ``graph_form`` the top
    coefficient must be 1 and the next one 0, and reconstruction starts at
    q^2 when every value is divisible by q^2 (the low coefficients are then
    taken to be zero).  ``verify`` holds extra (q, value) pairs, typically
    prime powers, that a candidate has to reproduce.
    """
    samples = sorted((int(q), int(v)) for q, v in samples)
    qs = [q for q, _ in samples]
    if len(set(qs)) != len(qs):
        raise ValueError("sample orders must be distinct")
    for i in range(len(qs)):
        for j in range(i + 1, len(qs)):
            if math.gcd(qs[i], qs[j]) != 1:
                raise ValueError(f"sample orders {qs[i]} and {qs[j]} are not coprime")
    if start is None:
        start = 2 if graph_form and degree >= 2 and all(v % (q * q) == 0 for q, v in samples) else 0
    d0 = []
    for q, v in samples:
        if v % q**start:
            return Reconstruction([], qs, start, 0)
        d0.append(v // q**start)

    found = []
    explored = 0
    # depth-first over coefficient choices, level = current power of q
    stack = [(start, tuple(d0), ())]
    while stack:
        level, ds, chosen = stack.pop()
        explored += 1
        if level > degree:
            if all(d == 0 for d in ds):
                cs = [0] * start + list(chosen)
                poly = QPolynomial(cs)
                if graph_form and degree >= 1:
                    if poly.coefficient(degree) != 1:
                        continue
                    if degree >= 2 and poly.coefficient(degree - 1) != 0:
                        continue
                checks = {str(q): poly(q) == v for q, v in verify}
                if all(checks.values()):
                    found.append(Candidate(poly, checks))
            continue
        if graph_form and level == degree:
            opts = [1]
        elif graph_form and degree >= 2 and level == degree - 1:
            opts = [0]
        else:
            r, M = crt(ds, qs)
            opts = _representatives(r, M, branching, factor)
        for c in reversed(opts):
            if any((d - c) % q for d, q in zip(ds, qs)):
                continue
            nxt = tuple((d - c) // q for d, q in zip(ds, qs))
            stack.append((level + 1, nxt, chosen + (c,)))
        if explored > max_candidates * (degree + 2):
            break
    found.sort(key=lambda c: (sum(abs(x) for x in c.poly.coeffs), c.poly.coeffs))
    return Reconstruction(found, qs, start, explored)


def residue_class_reconstruct(samples, modulus: int, residue: int, degree: int, **kw) -> Reconstruction:
    """Reconstruct from the samples whose order is congruent to residue mod modulus."""
    chosen = [(q, v) for q, v in samples if (q - residue) % modulus == 0]
    if len(chosen) < 3:
        raise ValueError(f"need at least 3 samples with q = {residue} mod {modulus}, got {len(chosen)}")
    kw.setdefault("graph_form", False)
    return crt_reconstruct(chosen, degree, **kw)


def parse_samples(text: str, drop=()) -> list[tuple[int, int]]:
    """Lines "q value"; blank lines and # comments ignored."""
    out = []
    drop = set(drop)
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        q, v = line.split()
        if int(q) in drop:
            continue
        out.append((int(q), int(v)))
    return out


# -- zeta functions -----------------------------------------------------------------------


@dataclass
class ZetaFunction:
    """prod_k (1 - q^k t)^(e_k) for a polynomial complement count."""

    exponents: dict  # k -> e_k, zero exponents omitted

    def numerator(self) -> list[int]:
        return sorted(k for k, e in self.exponents.items() for _ in range(e) if e > 0)

    def denominator(self) -> list[int]:
        return sorted(k for k, e in self.exponents.items() for _ in range(-e) if e < 0)

    def to_text(self) -> str:
        def block(ks):
            if not ks:
                return "1"
            return "*".join("(1 - t)" if k == 0 else ("(1 - q*t)" if k == 1 else f"(1 - q^{k}*t)") for k in ks)

        den = self.denominator()
        num = block(self.numerator())
        return num if not den else f"{num} / ({block(den)})"

    def series(self, q: int, order: int) -> list[Fraction]:
        """Power series coefficients of Z in t up to t^order."""
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[0] = Fraction(1)
        for k, e in self.exponents.items():
            a = q**k
            # (1 - a t)^e = sum binom(e, j) (-a t)^j, generalised binomial
            factor = [Fraction(0)] * (order + 1)
            b = Fraction(1)
            for j in range(order + 1):
                factor[j] = b * (-a) ** j
                b = b * (e - j) / (j + 1)
            coeffs = [sum(coeffs[i] * factor[m - i] for i in range(m + 1)) for m in range(order + 1)]
        return coeffs

    def to_json(self) -> dict:
        return {"exponents": {str(k): e for k, e in sorted(self.exponents.items())}, "text": self.to_text()}


def zeta_function(poly: QPolynomial, n: int | None = None) -> ZetaFunction:
    """Zeta function of the zero locus in P^(n-1) whose complement count is poly.

    n defaults to degree + 1.  Exponent of (1 - q^k t) is c_k - 1.
    """
    if n is None:
        n = poly.degree + 1
    exps = {}
    for k in range(n):
        e = poly.coefficient(k) - 1
        if e:
            exps[k] = e
    return ZetaFunction(exps)


def zeta_point_counts(z: ZetaFunction, q: int, order: int) -> list[int]:
    """N_m over F_(q^m), m = 1..order, read off from t Z'/Z = sum N_m t^m."""
    s = z.series(q, order)
    # logarithmic derivative: Z' = Z * L with L = sum N_m t^(m-1)
    L = []
    for m in range(1, order + 1):
        acc = m * s[m] - sum(L[j - 1] * s[m - j] for j in range(1, m))
        L.append(acc)
    out = []
    for v in L:
        if v.denominator != 1:
            raise ArithmeticError("non-integral point count from zeta series")
        out.append(int(v))
    return out

