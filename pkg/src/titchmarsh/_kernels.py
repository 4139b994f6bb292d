"""Segment kernels: jitted hot loops with a pure-numpy fallback.

Every kernel works on a half-open window [lo, hi) of consecutive
integers and expects ``primes`` to contain all primes up to
isqrt(hi - 1), sorted ascending, as an int64 array.  Factorization
kernels strike each base prime through the window, divide it out of a
residual array, and treat any residual > 1 as a single prime factor
(it must be prime: a composite residual would have two factors above
sqrt(n), exceeding n).

Backend selection: the numba implementations are active when numba
imports cleanly and TITCHMARSH_NO_NUMBA is not set to a truthy value.
Both implementation namespaces stay importable so parity tests and the
benchmark can compare them in one process.
"""

import os
from types import SimpleNamespace

import numpy as np

_ENV_FLAG = "TITCHMARSH_NO_NUMBA"


def _numba_disabled():
    return os.environ.get(_ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


# ---------------------------------------------------------------------------
# numpy backend


def _np_strike(residual, lo, hi, p):
    # indices of multiples of p in the window plus the exponent of p there;
    # divides p out of residual in place
    start = ((lo + p - 1) // p) * p
    if start >= hi:
        return None, None
    idx = np.arange(start - lo, hi - lo, p, dtype=np.int64)
    sub = residual[idx] // p
    exp = np.ones(idx.size, dtype=np.int64)
    pos = np.nonzero(sub % p == 0)[0]
    while pos.size:
        sub[pos] //= p
        exp[pos] += 1
        pos = pos[sub[pos] % p == 0]
    residual[idx] = sub
    return idx, exp


def _np_window(lo, hi):
    return np.arange(lo, hi, dtype=np.int64)


def _np_primality(lo, hi, primes):
    width = hi - lo
    flags = np.ones(width, dtype=np.bool_)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start < hi:
            flags[start - lo :: p] = False
    for n in range(lo, min(hi, 2)):
        flags[n - lo] = False
    return flags


def _np_divisor(lo, hi, primes):
    residual = _np_window(lo, hi)
    val = np.ones(hi - lo, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        idx, exp = _np_strike(residual, lo, hi, p)
        if idx is not None:
            val[idx] *= exp + 1
    val[residual > 1] *= 2
    return val


def _np_kfree(lo, hi, primes, k):
    residual = _np_window(lo, hi)
    val = np.ones(hi - lo, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        idx, exp = _np_strike(residual, lo, hi, p)
        if idx is not None:
            val[idx] *= np.minimum(exp, k - 1) + 1
    val[residual > 1] *= 2  # exponent 1: min(1, k-1) + 1 = 2 for every k >= 2
    return val


def _np_omega(lo, hi, primes):
    residual = _np_window(lo, hi)
    val = np.zeros(hi - lo, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        idx, exp = _np_strike(residual, lo, hi, p)
        if idx is not None:
            val[idx] += 1
    val[residual > 1] += 1
    return val


def _np_mu(lo, hi, primes):
    residual = _np_window(lo, hi)
    val = np.ones(hi - lo, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        idx, exp = _np_strike(residual, lo, hi, p)
        if idx is not None:
            val[idx] *= np.where(exp > 1, 0, -1)
    val[residual > 1] *= -1
    return val


def _np_pillai(lo, hi, primes):
    # numerator and denominator of prod_{p^e || n} (p + e*(p-1)) / p
    residual = _np_window(lo, hi)
    num = np.ones(hi - lo, dtype=np.int64)
    den = np.ones(hi - lo, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        idx, exp = _np_strike(residual, lo, hi, p)
        if idx is not None:
            num[idx] *= p + exp * (p - 1)
            den[idx] *= p
    big = residual > 1
    num[big] *= 2 * residual[big] - 1
    den[big] *= residual[big]
    return num, den


def _np_factor_counts(lo, hi, primes):
    residual = _np_window(lo, hi)
    counts = np.zeros(hi - lo, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        idx, exp = _np_strike(residual, lo, hi, p)
        if idx is not None:
            counts[idx] += 1
    counts[residual > 1] += 1
    return counts


def _np_factor_fill(lo, hi, primes, starts):
    residual = _np_window(lo, hi)
    cursor = np.zeros(hi - lo, dtype=np.int64)
    total = int(starts[-1])
    out_p = np.zeros(total, dtype=np.int64)
    out_e = np.zeros(total, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p >= hi:
            break
        idx, exp = _np_strike(residual, lo, hi, p)
        if idx is not None:
            slot = starts[idx] + cursor[idx]
            out_p[slot] = p
            out_e[slot] = exp
            cursor[idx] += 1
    big = np.nonzero(residual > 1)[0]
    slot = starts[big] + cursor[big]
    out_p[slot] = residual[big]
    out_e[slot] = 1
    return out_p, out_e


def _np_fixed_parts(num, den, idx):
    # Exact partial sums of floor(num/den * 2**64) over the selected
    # positions (idx is an int index array), decomposed so every
    # intermediate fits in int64: num < 2**40 * d(n) keeps num//den plus
    # three chained remainder shifts (23 + 23 + 18 = 64 bits) in range.
    # Weights of the four parts: 2**64, 2**41, 2**18, 2**0.
    n = num[idx]
    d = den[idx]
    q0 = n // d
    r = n % d
    t = r << 23
    q1 = t // d
    r = t % d
    t = r << 23
    q2 = t // d
    r = t % d
    t = r << 18
    q3 = t // d
    return (int(q0.sum()), int(q1.sum()), int(q2.sum()), int(q3.sum()))


NUMPY_IMPL = SimpleNamespace(
    primality=_np_primality,
    divisor=_np_divisor,
    kfree=_np_kfree,
    omega=_np_omega,
    mu=_np_mu,
    pillai=_np_pillai,
    factor_counts=_np_factor_counts,
    factor_fill=_np_factor_fill,
    fixed_parts=_np_fixed_parts,
)


# ---------------------------------------------------------------------------
# numba backend

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _nb_primality(lo, hi, primes):
        width = hi - lo
        flags = np.ones(width, dtype=np.bool_)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p >= hi:
                break
            start = ((lo + p - 1) // p) * p
            if start < p * p:
                start = p * p
            for idx in range(start - lo, width, p):
                flags[idx] = False
        for n in range(lo, min(hi, 2)):
            flags[n - lo] = False
        return flags

    @njit(cache=True, nogil=True)
    def _nb_divisor(lo, hi, primes):
        width = hi - lo
        residual = np.empty(width, dtype=np.int64)
        for i in range(width):
            residual[i] = lo + i
        val = np.ones(width, dtype=np.int64)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p >= hi:
                break
            start = ((lo + p - 1) // p) * p
            for idx in range(start - lo, width, p):
                e = 0
                r = residual[idx]
                while r % p == 0:
                    r //= p
                    e += 1
                residual[idx] = r
                val[idx] *= e + 1
        for i in range(width):
            if residual[i] > 1:
                val[i] *= 2
        return val

    @njit(cache=True, nogil=True)
    def _nb_kfree(lo, hi, primes, k):
        width = hi - lo
        residual = np.empty(width, dtype=np.int64)
        for i in range(width):
            residual[i] = lo + i
        val = np.ones(width, dtype=np.int64)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p >= hi:
                break
            start = ((lo + p - 1) // p) * p
            for idx in range(start - lo, width, p):
                e = 0
                r = residual[idx]
                while r % p == 0:
                    r //= p
                    e += 1
                residual[idx] = r
                cap = e if e < k - 1 else k - 1
                val[idx] *= cap + 1
        for i in range(width):
            if residual[i] > 1:
                val[i] *= 2
        return val

    @njit(cache=True, nogil=True)
    def _nb_omega(lo, hi, primes):
        width = hi - lo
        residual = np.empty(width, dtype=np.int64)
        for i in range(width):
            residual[i] = lo + i
        val = np.zeros(width, dtype=np.int64)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p >= hi:
                break
            start = ((lo + p - 1) // p) * p
            for idx in range(start - lo, width, p):
                r = residual[idx]
                while r % p == 0:
                    r //= p
                residual[idx] = r
                val[idx] += 1
        for i in range(width):
            if residual[i] > 1:
                val[i] += 1
        return val

    @njit(cache=True, nogil=True)
    def _nb_mu(lo, hi, primes):
        width = hi - lo
        residual = np.empty(width, dtype=np.int64)
        for i in range(width):
            residual[i] = lo + i
        val = np.ones(width, dtype=np.int64)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p >= hi:
                break
            start = ((lo + p - 1) // p) * p
            for idx in range(start - lo, width, p):
                e = 0
                r = residual[idx]
                while r % p == 0:
                    r //= p
                    e += 1
                residual[idx] = r
                if e > 1:
                    val[idx] = 0
                else:
                    val[idx] = -val[idx]
        for i in range(width):
            if residual[i] > 1:
                val[i] = -val[i]
        return val

    @njit(cache=True, nogil=True)
    def _nb_pillai(lo, hi, primes):
        width = hi - lo
        residual = np.empty(width, dtype=np.int64)
        for i in range(width):
            residual[i] = lo + i
        num = np.ones(width, dtype=np.int64)
        den = np.ones(width, dtype=np.int64)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p >= hi:
                break
            start = ((lo + p - 1) // p) * p
            for idx in range(start - lo, width, p):
                e = 0
                r = residual[idx]
                while r % p == 0:
                    r //= p
                    e += 1
                residual[idx] = r
                num[idx] *= p + e * (p - 1)
                den[idx] *= p
        for i in range(width):
            if residual[i] > 1:
                num[i] *= 2 * residual[i] - 1
                den[i] *= residual[i]
        return num, den

    @njit(cache=True, nogil=True)
    def _nb_factor_counts(lo, hi, primes):
        width = hi - lo
        residual = np.empty(width, dtype=np.int64)
        for i in range(width):
            residual[i] = lo + i
        counts = np.zeros(width, dtype=np.int64)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p >= hi:
                break
            start = ((lo + p - 1) // p) * p
            for idx in range(start - lo, width, p):
                r = residual[idx]
                while r % p == 0:
                    r //= p
                residual[idx] = r
                counts[idx] += 1
        for i in range(width):
            if residual[i] > 1:
                counts[i] += 1
        return counts

    @njit(cache=True, nogil=True)
    def _nb_factor_fill(lo, hi, primes, starts):
        width = hi - lo
        residual = np.empty(width, dtype=np.int64)
        for i in range(width):
            residual[i] = lo + i
        cursor = np.zeros(width, dtype=np.int64)
        total = starts[width]
        out_p = np.zeros(total, dtype=np.int64)
        out_e = np.zeros(total, dtype=np.int64)
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p >= hi:
                break
            start = ((lo + p - 1) // p) * p
            for idx in range(start - lo, width, p):
                e = 0
                r = residual[idx]
                while r % p == 0:
                    r //= p
                    e += 1
                residual[idx] = r
                slot = starts[idx] + cursor[idx]
                out_p[slot] = p
                out_e[slot] = e
                cursor[idx] += 1
        for i in range(width):
            if residual[i] > 1:
                slot = starts[i] + cursor[i]
                out_p[slot] = residual[i]
                out_e[slot] = 1
        return out_p, out_e

    @njit(cache=True, nogil=True)
    def _nb_fixed_parts(num, den, idx):
        s0 = np.int64(0)
        s1 = np.int64(0)
        s2 = np.int64(0)
        s3 = np.int64(0)
        for i in range(idx.shape[0]):
            n = num[idx[i]]
            d = den[idx[i]]
            q0 = n // d
            r = n % d
            t = r << 23
            q1 = t // d
            r = t % d
            t = r << 23
            q2 = t // d
            r = t % d
            t = r << 18
            q3 = t // d
            s0 += q0
            s1 += q1
            s2 += q2
            s3 += q3
        return (s0, s1, s2, s3)

    NUMBA_IMPL = SimpleNamespace(
        primality=_nb_primality,
        divisor=_nb_divisor,
        kfree=_nb_kfree,
        omega=_nb_omega,
        mu=_nb_mu,
        pillai=_nb_pillai,
        factor_counts=_nb_factor_counts,
        factor_fill=_nb_factor_fill,
        fixed_parts=_nb_fixed_parts,
    )
else:
    NUMBA_IMPL = None

if HAVE_NUMBA and not _numba_disabled():
    BACKEND = "numba"
    ACTIVE = NUMBA_IMPL
else:
    BACKEND = "numpy"
    ACTIVE = NUMPY_IMPL

IMPLS = {"numpy": NUMPY_IMPL}
if NUMBA_IMPL is not None:
    IMPLS["numba"] = NUMBA_IMPL
