"""Hot loops for exhaustive counting, with numba and pure-numpy backends.

Set ``FQGRAPH_NO_NUMBA=1`` to force the numpy implementations.  Every public
function here has the same signature and result in both backends.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("FQGRAPH_NO_NUMBA", "").strip().lower() not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if not USE_NUMBA:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# -- common zeros of a polynomial system -------------------------------------------
#
# A system is compiled into flat arrays: for term t, coef[t] is a field code
# and exps[t, j] the exponent of variable j; terms of polynomial i occupy
# poly_start[i]:poly_start[i+1].  Points are enumerated with variable 0 slowest.
# The first n-1 variables form the "outer" index; the last variable is swept
# in full for each outer assignment using the polynomial as univariate in it.


@njit(cache=True)
def _zeros_prime_nb(p, n, coef, exps, poly_start, powt, start, stop):
    T = coef.shape[0]
    m = poly_start.shape[0] - 1
    nout = n - 1
    last = n - 1
    maxd = 0
    for t in range(T):
        if exps[t, last] > maxd:
            maxd = exps[t, last]
    digits = np.zeros(max(nout, 1), dtype=np.int64)
    rem = start
    for j in range(nout - 1, -1, -1):
        digits[j] = rem % p
        rem //= p
    # prefix[t, j]: coefficient times the product over variables < j
    prefix = np.empty((T, nout + 1), dtype=np.int64)
    for t in range(T):
        prefix[t, 0] = coef[t]
        for j in range(nout):
            prefix[t, j + 1] = prefix[t, j] * powt[digits[j], exps[t, j]] % p
    ucoef = np.zeros((m, maxd + 1), dtype=np.int64)
    alive = np.empty(p, dtype=np.bool_)
    total = 0
    idx = start
    while idx < stop:
        for i in range(m):
            for k in range(maxd + 1):
                ucoef[i, k] = 0
            for t in range(poly_start[i], poly_start[i + 1]):
                e = exps[t, last]
                ucoef[i, e] = (ucoef[i, e] + prefix[t, nout]) % p
        for x in range(p):
            alive[x] = True
        nalive = p
        for i in range(m):
            if nalive == 0:
                break
            for x in range(p):
                if alive[x]:
                    v = 0
                    for k in range(maxd, -1, -1):
                        v = (v * x + ucoef[i, k]) % p
                    if v != 0:
                        alive[x] = False
                        nalive -= 1
        total += nalive
        idx += 1
        if idx >= stop:
            break
        # odometer step, then refresh prefixes from the lowest changed level
        j = nout - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < p:
                break
            digits[j] = 0
            j -= 1
        lo = max(j, 0)
        for t in range(T):
            for jj in range(lo, nout):
                prefix[t, jj + 1] = prefix[t, jj] * powt[digits[jj], exps[t, jj]] % p
    return total


@njit(cache=True)
def _zeros_table_nb(q, n, coef, exps, poly_start, powt, add, mul, start, stop):
    T = coef.shape[0]
    m = poly_start.shape[0] - 1
    nout = n - 1
    last = n - 1
    maxd = 0
    for t in range(T):
        if exps[t, last] > maxd:
            maxd = exps[t, last]
    digits = np.zeros(max(nout, 1), dtype=np.int64)
    rem = start
    for j in range(nout - 1, -1, -1):
        digits[j] = rem % q
        rem //= q
    prefix = np.empty((T, nout + 1), dtype=np.int64)
    for t in range(T):
        prefix[t, 0] = coef[t]
        for j in range(nout):
            prefix[t, j + 1] = mul[prefix[t, j], powt[digits[j], exps[t, j]]]
    ucoef = np.zeros((m, maxd + 1), dtype=np.int64)
    alive = np.empty(q, dtype=np.bool_)
    total = 0
    idx = start
    while idx < stop:
        for i in range(m):
            for k in range(maxd + 1):
                ucoef[i, k] = 0
            for t in range(poly_start[i], poly_start[i + 1]):
                e = exps[t, last]
                ucoef[i, e] = add[ucoef[i, e], prefix[t, nout]]
        for x in range(q):
            alive[x] = True
        nalive = q
        for i in range(m):
            if nalive == 0:
                break
            for x in range(q):
                if alive[x]:
                    v = 0
                    for k in range(maxd, -1, -1):
                        v = add[mul[v, x], ucoef[i, k]]
                    if v != 0:
                        alive[x] = False
                        nalive -= 1
        total += nalive
        idx += 1
        if idx >= stop:
            break
        j = nout - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < q:
                break
            digits[j] = 0
            j -= 1
        lo = max(j, 0)
        for t in range(T):
            for jj in range(lo, nout):
                prefix[t, jj + 1] = mul[prefix[t, jj], powt[digits[jj], exps[t, jj]]]
    return total


def _zeros_numpy(q, n, coef, exps, poly_start, powt, add, mul, start, stop, prime):
    """Vectorised over blocks of outer indices and the full inner sweep."""
    nout = n - 1
    last = n - 1
    maxd = int(exps[:, last].max()) if exps.shape[0] else 0
    m = len(poly_start) - 1
    xs = np.arange(q, dtype=np.int64)
    block = max(1, (1 << 18) // q)
    total = 0
    for b0 in range(start, stop, block):
        b1 = min(stop, b0 + block)
        ids = np.arange(b0, b1, dtype=np.int64)
        digs = np.empty((nout, ids.size), dtype=np.int64)
        rem = ids.copy()
        for j in range(nout - 1, -1, -1):
            digs[j] = rem % q
            rem //= q
        alive = np.ones((ids.size, q), dtype=bool)
        for i in range(m):
            uc = np.zeros((maxd + 1, ids.size), dtype=np.int64)
            for t in range(poly_start[i], poly_start[i + 1]):
                val = np.full(ids.size, coef[t], dtype=np.int64)
                for j in range(nout):
                    e = exps[t, j]
                    if e:
                        val = (val * powt[digs[j], e]) % q if prime else mul[val, powt[digs[j], e]]
                e = exps[t, last]
                uc[e] = (uc[e] + val) % q if prime else add[uc[e], val]
            v = np.zeros((ids.size, q), dtype=np.int64)
            for k in range(maxd, -1, -1):
                if prime:
                    v = (v * xs[None, :] + uc[k][:, None]) % q
                else:
                    v = add[mul[v, xs[None, :]], uc[k][:, None]]
            alive &= v == 0
        total += int(alive.sum())
    return total


def count_zeros(q, prime, n, coef, exps, poly_start, powt, add, mul, start, stop) -> int:
    """Common zeros over F_q^n for outer indices in [start, stop); n >= 1."""
    if stop <= start:
        return 0
    if USE_NUMBA:
        if prime:
            return int(_zeros_prime_nb(q, n, coef, exps, poly_start, powt, start, stop))
        return int(_zeros_table_nb(q, n, coef, exps, poly_start, powt, add, mul, start, stop))
    return _zeros_numpy(q, n, coef, exps, poly_start, powt, add, mul, start, stop, prime)


# -- one polynomial, linear in each of its last two variables ---------------------
#
# Over a prime field, a*xy + b*x + c*y + d has 2p-1 zeros when a != 0 and
# ad = bc, p-1 when a != 0 otherwise, and p, p^2 or 0 when a = 0.  Only the
# first n-2 variables are enumerated.


@njit(cache=True)
def _plane_zeros(p, a, b, c, d):
    if a != 0:
        return 2 * p - 1 if (a * d - b * c) % p == 0 else p - 1
    if b != 0 or c != 0:
        return p
    return p * p if d == 0 else 0


@njit(cache=True)
def _zeros_bilinear_nb(p, n, coef, exps, powt, start, stop):
    T = coef.shape[0]
    nout = n - 2
    kx, ky = n - 2, n - 1
    digits = np.zeros(max(nout, 1), dtype=np.int64)
    rem = start
    for j in range(nout - 1, -1, -1):
        digits[j] = rem % p
        rem //= p
    prefix = np.empty((T, nout + 1), dtype=np.int64)
    for t in range(T):
        prefix[t, 0] = coef[t]
        for j in range(nout):
            prefix[t, j + 1] = prefix[t, j] * powt[digits[j], exps[t, j]] % p
    slot = np.empty(T, dtype=np.int64)
    for t in range(T):
        slot[t] = 2 * exps[t, kx] + exps[t, ky]
    acc = np.zeros(4, dtype=np.int64)
    total = 0
    idx = start
    while idx < stop:
        for k in range(4):
            acc[k] = 0
        for t in range(T):
            acc[slot[t]] += prefix[t, nout]
        total += _plane_zeros(p, acc[3] % p, acc[2] % p, acc[1] % p, acc[0] % p)
        idx += 1
        if idx >= stop:
            break
        j = nout - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < p:
                break
            digits[j] = 0
            j -= 1
        lo = max(j, 0)
        for t in range(T):
            for jj in range(lo, nout):
                prefix[t, jj + 1] = prefix[t, jj] * powt[digits[jj], exps[t, jj]] % p
    return total


@njit(cache=True)
def _zeros_bilinear_table_nb(q, n, coef, exps, powt, add, mul, start, stop):
    T = coef.shape[0]
    nout = n - 2
    kx, ky = n - 2, n - 1
    digits = np.zeros(max(nout, 1), dtype=np.int64)
    rem = start
    for j in range(nout - 1, -1, -1):
        digits[j] = rem % q
        rem //= q
    prefix = np.empty((T, nout + 1), dtype=np.int64)
    for t in range(T):
        prefix[t, 0] = coef[t]
        for j in range(nout):
            prefix[t, j + 1] = mul[prefix[t, j], powt[digits[j], exps[t, j]]]
    slot = np.empty(T, dtype=np.int64)
    for t in range(T):
        slot[t] = 2 * exps[t, kx] + exps[t, ky]
    acc = np.zeros(4, dtype=np.int64)
    total = 0
    idx = start
    while idx < stop:
        for k in range(4):
            acc[k] = 0
        for t in range(T):
            acc[slot[t]] = add[acc[slot[t]], prefix[t, nout]]
        a, b, c, d = acc[3], acc[2], acc[1], acc[0]
        if a != 0:
            total += 2 * q - 1 if mul[a, d] == mul[b, c] else q - 1
        elif b != 0 or c != 0:
            total += q
        elif d == 0:
            total += q * q
        idx += 1
        if idx >= stop:
            break
        j = nout - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < q:
                break
            digits[j] = 0
            j -= 1
        lo = max(j, 0)
        for t in range(T):
            for jj in range(lo, nout):
                prefix[t, jj + 1] = mul[prefix[t, jj], powt[digits[jj], exps[t, jj]]]
    return total


def _zeros_bilinear_numpy(q, n, coef, exps, powt, add, mul, start, stop, prime):
    nout = n - 2
    slot = 2 * exps[:, n - 2] + exps[:, n - 1]
    block = 1 << 16
    total = 0
    for b0 in range(start, stop, block):
        ids = np.arange(b0, min(stop, b0 + block), dtype=np.int64)
        digs = np.empty((nout, ids.size), dtype=np.int64)
        rem = ids.copy()
        for j in range(nout - 1, -1, -1):
            digs[j] = rem % q
            rem //= q
        acc = np.zeros((4, ids.size), dtype=np.int64)
        for t in range(coef.shape[0]):
            val = np.full(ids.size, coef[t], dtype=np.int64)
            for j in range(nout):
                if exps[t, j]:
                    f = powt[digs[j], exps[t, j]]
                    val = val * f % q if prime else mul[val, f]
            k = slot[t]
            acc[k] = (acc[k] + val) % q if prime else add[acc[k], val]
        d, c, b, a = acc
        same = (a * d - b * c) % q == 0 if prime else mul[a, d] == mul[b, c]
        lin = (b != 0) | (c != 0)
        out = np.where(a != 0, np.where(same, 2 * q - 1, q - 1),
                       np.where(lin, q, np.where(d == 0, q * q, 0)))
        total += int(out.sum())
    return total


def count_zeros_bilinear(q, prime, n, coef, exps, powt, add, mul, start, stop) -> int:
    """Zeros in F_q^n of one polynomial of degree <= 1 in each of its last two
    variables; outer indices run over the first n-2 coordinates."""
    if stop <= start:
        return 0
    if USE_NUMBA:
        if prime:
            return int(_zeros_bilinear_nb(q, n, coef, exps, powt, start, stop))
        return int(_zeros_bilinear_table_nb(q, n, coef, exps, powt, add, mul, start, stop))
    return _zeros_bilinear_numpy(q, n, coef, exps, powt, add, mul, start, stop, prime)


# -- quadratic fibres --------------------------------------------------------------
#
# For a quartic that is quadratic in its first variable, f = A a^2 + B a + C with
# A, B, C forms in the remaining three variables, the number of roots a in F_p of
# each fibre is read off the discriminant.  Used for the long prime scan.


@njit(cache=True)
def _quartic_fibres_nb(p, sq):
    # representatives of P^2 for (b : c : d): (1, c, d), (0, 1, d), (0, 0, 1)
    total = 0
    for chart in range(3):
        if chart == 0:
            nrep = p * p
        elif chart == 1:
            nrep = p
        else:
            nrep = 1
        for r in range(nrep):
            if chart == 0:
                b = 1
                c = r // p
                d = r % p
            elif chart == 1:
                b = 0
                c = 1
                d = r
            else:
                b = 0
                c = 0
                d = 1
            A = (b + c) * (b + d) % p
            B = (b * b % p * c + b * c % p * c + b * c % p * d + b * d % p * d + c * c % p * d + c * d % p * d) % p
            C = c * c % p * d % p * (b + d) % p
            if A != 0:
                D = (B * B - 4 * A % p * C) % p
                if D == 0:
                    total += 1
                elif sq[D]:
                    total += 2
            elif B != 0:
                total += 1
            elif C == 0:
                total += p
    return total


def _quartic_fibres_numpy(p, sq):
    total = 0
    c, d = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    reps = [
        (np.ones(p * p, dtype=np.int64), c.ravel(), d.ravel()),
        (np.zeros(p, dtype=np.int64), np.ones(p, dtype=np.int64), np.arange(p, dtype=np.int64)),
        (np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64), np.ones(1, dtype=np.int64)),
    ]
    for b, c, d in reps:
        A = (b + c) * (b + d) % p
        B = (b * b * c + b * c * c + b * c * d + b * d * d + c * c * d + c * d * d) % p
        C = c * c % p * d % p * (b + d) % p
        D = (B * B - 4 * A * C) % p
        roots = np.where(D == 0, 1, np.where(sq[D], 2, 0))
        lin = np.where(B != 0, 1, np.where(C == 0, p, 0))
        total += int(np.where(A != 0, roots, lin).sum())
    return total


def quartic_projective_zeros(p: int) -> int:
    """Zeros in P^3(F_p) of the 12-term quartic, p an odd prime.

    The point (1:0:0:0) is always a zero; every other point has (b:c:d) != 0.
    """
    sq = np.zeros(p, dtype=np.bool_)
    sq[(np.arange(1, p, dtype=np.int64) ** 2) % p] = True
    fibres = _quartic_fibres_nb(p, sq) if USE_NUMBA else _quartic_fibres_numpy(p, sq)
    return 1 + int(fibres)


# -- amplitude: additive convolution of quadric value vectors -------------------------


@njit(cache=True)
def _convolve_nb(dist, support, weights, add, q, n, p):
    size = dist.shape[0]
    out = np.zeros(size, dtype=np.int64)
    da = np.empty(n, dtype=np.int64)
    S = support.shape[0]
    for a in range(size):
        ca = dist[a]
        if ca == 0:
            continue
        rem = a
        for j in range(n - 1, -1, -1):
            da[j] = rem % q
            rem //= q
        for s in range(S):
            idx = 0
            for j in range(n):
                idx = idx * q + add[da[j], support[s, j]]
            out[idx] = (out[idx] + ca * weights[s]) % p
    return out


def _convolve_numpy(dist, support, weights, add, q, n, p):
    size = dist.shape[0]
    states = np.arange(size, dtype=np.int64)
    digs = np.empty((n, size), dtype=np.int64)
    rem = states.copy()
    for j in range(n - 1, -1, -1):
        digs[j] = rem % q
        rem //= q
    nz = dist != 0
    out = np.zeros(size, dtype=np.int64)
    src = dist[nz]
    dsub = digs[:, nz]
    for s in range(support.shape[0]):
        idx = np.zeros(src.size, dtype=np.int64)
        for j in range(n):
            idx = idx * q + add[dsub[j], support[s, j]]
        np.add.at(out, idx, src * weights[s] % p)
        out %= p
    return out


def convolve_distributions(dist, support, weights, add, q, n, p):
    """out[a + b] += dist[a] * weights[b] over F_q^n, counts kept mod p."""
    if USE_NUMBA:
        return _convolve_nb(dist, support, weights, add, q, n, p)
    return _convolve_numpy(dist, support, weights, add, q, n, p)


def warmup() -> None:
    """Compile or load every kernel once so later timings measure only the work."""
    coef = np.array([1, 1], dtype=np.int64)
    exps = np.array([[1, 0], [0, 1]], dtype=np.int64)
    starts = np.array([0, 2], dtype=np.int64)
    powt = np.array([[1, 0], [1, 1]], dtype=np.int64)
    tab = np.zeros((2, 2), dtype=np.int64)
    count_zeros(2, True, 2, coef, exps, starts, powt, tab, tab, 0, 2)
    add4 = np.array([[a ^ b for b in range(4)] for a in range(4)], dtype=np.int64)
    powt4 = np.ones((4, 2), dtype=np.int64)
    powt4[:, 1] = np.arange(4)
    count_zeros(4, False, 2, coef, exps, starts, powt4, add4, add4, 0, 4)
    count_zeros_bilinear(2, True, 2, coef, exps, powt, tab, tab, 0, 1)
    count_zeros_bilinear(4, False, 2, coef, exps, powt4, add4, add4, 0, 1)
    quartic_projective_zeros(3)
    convolve_distributions(np.ones(3, dtype=np.int64), np.zeros((1, 1), dtype=np.int64),
                           np.ones(1, dtype=np.int64), np.array([[0, 1, 2], [1, 2, 0], [2, 0, 1]], dtype=np.int64),
                           3, 1, 3)
