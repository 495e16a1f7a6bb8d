"""Finite fields F_{p^k} in polynomial basis.

Elements are encoded as integers ``0 <= code < q``: the base-p digits of the
code are the coefficients of the residue polynomial, lowest degree first.
Integers therefore embed into the prime subfield as ``z % p``.

Prime fields use plain residue arithmetic.  Extension fields with
``q <= TABLE_LIMIT`` carry precomputed addition/multiplication tables that the
counting kernels index directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

TABLE_LIMIT = 1024
MAX_ORDER = 2**32


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, math.isqrt(q) + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return (q, 1)


# -- dense polynomials over F_p, coefficient lists lowest degree first ------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(modulus: tuple[int, ...] | list[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    m = _trim([c % p for c in modulus])
    k = len(m) - 1
    if k < 1 or m[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _pmod(_sub(_ppowmod(x, p**k, m, p), x, p), m, p):
        return False
    for r in _prime_factors(k):
        h = _sub(_ppowmod(x, p ** (k // r), m, p), x, p)
        g = _pgcd(m, h, p)
        if len(g) > 1:
            return False
    return True


def _sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Coefficients are compared from x^{k-1} down to the constant term, so over
    F_3 the quadratic ``x^2 + 1`` precedes ``x^2 + x + 2``.
    """
    if k == 1:
        return (0, 1)
    for high_first in itertools.product(range(p), repeat=k):
        low_first = tuple(reversed(high_first)) + (1,)
        if low_first[0] == 0:
            continue
        if is_irreducible(low_first, p):
            return low_first
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q, q = p^k, with a fixed irreducible modulus.

    ``modulus`` lists coefficients lowest degree first and is monic.
    """

    p: int
    k: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.k < 1:
            raise FieldError("extension degree must be positive")
        if len(self.modulus) != self.k + 1 or not is_irreducible(self.modulus, self.p):
            raise FieldError(f"modulus {self.modulus} is not a monic irreducible of degree {self.k}")
        object.__setattr__(self, "q", self.p**self.k)
        if self.q > MAX_ORDER:
            raise FieldError(f"q = {self.q} exceeds the supported order 2^32")

    def __repr__(self):
        return f"FieldSpec(q={self.q}, modulus={self.modulus})"

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    # -- element arithmetic on integer codes ---------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        code = 0
        for d in reversed(list(ds)):
            code = code * self.p + (d % self.p)
        return code

    def embed(self, z: int) -> int:
        """Image of the integer z in the prime subfield."""
        return z % self.p

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._tables is not None:
            return int(self._tables[0][a, b])
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if self._tables is not None:
            return int(self._tables[1][a, b])
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        prod = _pmul(_trim(self.digits(a)), _trim(self.digits(b)), self.p)
        return self.from_digits(_pmod(prod, list(self.modulus), self.p))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def elements(self):
        return range(self.q)

    # -- tables ---------------------------------------------------------------

    @cached_property
    def _tables(self):
        if self.k == 1 or self.q > TABLE_LIMIT:
            return None
        q, p = self.q, self.p
        digits = np.array([self.digits(a) for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(self.k, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        mul = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                mul[a, b] = mul[b, a] = self._mul_slow(a, b)
        return add.astype(np.int64), mul

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Full (q, q) addition and multiplication tables as int64 arrays."""
        if self.k == 1:
            if self.q > TABLE_LIMIT:
                raise FieldError("tables are only built for q <= %d" % TABLE_LIMIT)
            r = np.arange(self.q, dtype=np.int64)
            return (r[:, None] + r[None, :]) % self.q, (r[:, None] * r[None, :]) % self.q
        if self._tables is None:
            raise FieldError("tables are only built for q <= %d" % TABLE_LIMIT)
        return self._tables

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        """Inverses indexed by code; entry 0 is 0 (excluded points)."""
        if self.q > 2**16:
            raise FieldError("inverse tables are built for q <= 2^16")
        out = np.zeros(self.q, dtype=np.int64)
        for a in range(1, self.q):
            out[a] = self.inv(a)
        return out

    def pow_table(self, max_exp: int) -> np.ndarray:
        """``T[a, e] = a**e`` for ``0 <= e <= max_exp`` with ``0**0 = 1``."""
        out = np.empty((self.q, max_exp + 1), dtype=np.int64)
        out[:, 0] = 1
        for e in range(1, max_exp + 1):
            for a in range(self.q):
                out[a, e] = self.mul(int(out[a, e - 1]), a)
        return out

    def element(self, code: int) -> FieldElement:
        return FieldElement(self, code % self.q if self.k == 1 else code)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    code: int

    @property
    def coefficients(self) -> list[int]:
        return self.spec.digits(self.code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return self.spec.embed(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.mul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.code, e))

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.spec, self.spec.mul(self.code, self.spec.inv(b)))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == self.spec.embed(other)
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"F{self.spec.q}({self.code})"


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Build F_{p^k}; the default modulus is the lexicographically smallest one."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be positive")
    if p**k > MAX_ORDER:
        raise FieldError(f"q = {p}^{k} exceeds the supported order 2^32")
    if modulus is None:
        modulus = smallest_irreducible(p, k)
    return FieldSpec(p, k, tuple(modulus))


def field_of_order(q: int) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    return make_field(*pk)


def power_sum(spec: FieldSpec, k: int) -> FieldElement:
    """Closed form of the sum of x^k over all x in F_q (with 0^0 = 1).

    Equals -1 when k is a positive multiple of q - 1 and 0 otherwise.
    """
    if k < 0:
        raise ValueError("exponent must be non-negative")
    if k > 0 and k % (spec.q - 1) == 0:
        return FieldElement(spec, spec.neg(1))
    return FieldElement(spec, 0)


def power_sum_naive(spec: FieldSpec, k: int) -> FieldElement:
    total = 0
    for x in spec.elements():
        total = spec.add(total, spec.pow(x, k) if (x or k) else 1)
    return FieldElement(spec, total)


def unit_indicator(z: int, q: int) -> int:
    """1 if gcd(z, q) == 1 and 0 otherwise: the complement count of a constant in P^0."""
    return 1 if math.gcd(z, q) == 1 else 0


CONICS = {
    "a2+ab+b2": ((2, 0, 1), (1, 1, 1), (0, 2, 1)),
    "a2+b2": ((2, 0, 1), (0, 2, 1)),
}


def conic_closed_form(which: str, q: int) -> int:
    if which == "a2+ab+b2":
        return q - {1: 1, 0: 0, 2: -1}[q % 3]
    if which == "a2+b2":
        return q - {1: 1, 0: 0, 2: 0, 3: -1}[q % 4]
    raise ValueError(f"unknown conic {which!r}")


def conic_count(which: str, spec: FieldSpec) -> int:
    """Points of P^1(F_q) where the binary form does not vanish.

    Counted by enumeration and checked against the residue-class closed form.
    """
    if which not in CONICS:
        raise ValueError(f"unknown conic {which!r}")
    terms = CONICS[which]

    def value(a, b):
        total = 0
        for ea, eb, c in terms:
            total = spec.add(total, spec.mul(spec.embed(c), spec.mul(spec.pow(a, ea), spec.pow(b, eb))))
        return total

    count = 1 if value(1, 0) else 0
    count += sum(1 for a in spec.elements() if value(a, 1))
    expected = conic_closed_form(which, spec.q)
    if count != expected:
        raise FieldError(f"conic count {count} disagrees with closed form {expected} at q={spec.q}")
    return count
