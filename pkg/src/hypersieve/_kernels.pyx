# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice kernels: SL(2, Z) enumeration and double-coset canonical forms."""

import numpy as np
cimport numpy as cnp
from libc.math cimport log, floor, ceil, fabs, pow

cnp.import_array()


cdef inline long _gcd(long a, long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline void _egcd(long a, long b, long *x, long *y) nogil:
    # a*x + b*y = gcd(a, b) >= 0
    cdef long x0 = 1, y0 = 0, x1 = 0, y1 = 1, q, t
    while b != 0:
        q = a // b
        if (a % b != 0) and ((a < 0) != (b < 0)):
            q -= 1
        t = a - q * b
        a = b
        b = t
        t = x0 - q * x1
        x0 = x1
        x1 = t
        t = y0 - q * y1
        y0 = y1
        y1 = t
    if a < 0:
        x0 = -x0
        y0 = -y0
    x[0] = x0
    y[0] = y0


cdef inline long _cdiv(long n, long d) nogil:
    # ceil(n / d) for d > 0
    cdef long q = n // d
    if n % d != 0 and ((n < 0) == (d < 0)):
        q += 1
    return q


cdef inline long _fdiv(long n, long d) nogil:
    cdef long q = n // d
    if n % d != 0 and ((n < 0) != (d < 0)):
        q -= 1
    return q


cdef inline void _k_range(long base, long step, long H, long *lo, long *hi) nogil:
    # integers k with |base + k*step| <= H
    cdef long l, h
    if step == 0:
        if base > H or base < -H:
            lo[0] = 1
            hi[0] = 0
        return
    if step > 0:
        l = _cdiv(-H - base, step)
        h = _fdiv(H - base, step)
    else:
        l = _cdiv(H - base, step)
        h = _fdiv(-H - base, step)
    if l > lo[0]:
        lo[0] = l
    if h < hi[0]:
        hi[0] = h


def enumerate_sl2(long H):
    """All PSL(2, Z) matrices with entries bounded by H, one sign per class.

    The sign is fixed so that the first nonzero entry of the bottom row is
    positive.  Returns an ``(n, 4)`` int64 array of ``(a, b, c, d)``.
    """
    cdef long a, c, x, y, b0, d0, lo, hi, k, n = 0, cap = 16 * (H + 1) * (H + 1) + 16
    out = np.empty((cap, 4), dtype=np.int64)
    cdef long[:, :] o = out
    for b0 in range(-H, H + 1):
        o[n, 0] = 1
        o[n, 1] = b0
        o[n, 2] = 0
        o[n, 3] = 1
        n += 1
    for c in range(1, H + 1):
        for a in range(-H, H + 1):
            if _gcd(a, c) != 1:
                continue
            # a*d - b*c = 1  ->  a*x + c*y = 1 with d = x, b = -y
            _egcd(a, c, &x, &y)
            d0 = x
            b0 = -y
            lo = -(1L << 60)
            hi = (1L << 60)
            _k_range(b0, a, H, &lo, &hi)
            _k_range(d0, c, H, &lo, &hi)
            for k in range(lo, hi + 1):
                if n >= cap:
                    raise RuntimeError("enumeration buffer overflow")
                o[n, 0] = a
                o[n, 1] = b0 + k * a
                o[n, 2] = c
                o[n, 3] = d0 + k * c
                n += 1
    return out[:n].copy()


def canonical_double(double[:] A, double[:] Bv, double[:] Cv, double[:] D, double mu, double zero_tol=1e-9):
    """Double-coset canonical form under ``diag(mu, 1/mu)`` acting on both sides.

    For conjugated entries ``(a, b, c, d)`` the orbit is
    ``(a mu^m, b mu^n, c mu^-n, d mu^-m)`` with ``m = n (mod 2)``, up to an
    overall sign.  The representative minimises the Frobenius norm, ties broken
    lexicographically on entries rounded to 9 decimals.  Returns ``(m, n, out)``.
    """
    cdef Py_ssize_t N = A.shape[0], i
    cdef double lmu = log(mu), a, b, c, d, ms, ns, F, bestF, s
    cdef long m, n, m0, m1, n0, n1, bm = 0, bn = 0
    cdef double e[4]
    cdef double be[4]
    cdef int j, better
    mm = np.empty(N, dtype=np.int64)
    nn = np.empty(N, dtype=np.int64)
    out = np.empty((N, 4), dtype=np.float64)
    cdef long[:] mv = mm
    cdef long[:] nv = nn
    cdef double[:, :] ov = out
    for i in range(N):
        a = A[i]; b = Bv[i]; c = Cv[i]; d = D[i]
        if fabs(a) < zero_tol or fabs(d) < zero_tol:
            m0 = -1; m1 = 2
        else:
            ms = log(fabs(d) / fabs(a)) / (2.0 * lmu)
            m0 = <long>floor(ms) - 1; m1 = <long>ceil(ms) + 1
        if fabs(b) < zero_tol or fabs(c) < zero_tol:
            n0 = -1; n1 = 2
        else:
            ns = log(fabs(c) / fabs(b)) / (2.0 * lmu)
            n0 = <long>floor(ns) - 2; n1 = <long>ceil(ns) + 2
        bestF = -1.0
        for m in range(m0, m1 + 1):
            for n in range(n0, n1 + 1):
                if (m - n) % 2 != 0:
                    continue
                e[0] = a * pow(mu, m)
                e[1] = b * pow(mu, n)
                e[2] = c * pow(mu, -n)
                e[3] = d * pow(mu, -m)
                s = 1.0
                for j in range(4):
                    if fabs(e[j]) > zero_tol:
                        if e[j] < 0:
                            s = -1.0
                        break
                for j in range(4):
                    e[j] = s * e[j] + 0.0
                F = e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3]
                better = 0
                if bestF < 0 or F < bestF * (1 - 1e-12):
                    better = 1
                elif F <= bestF * (1 + 1e-12):
                    for j in range(4):
                        if floor(e[j] * 1e9 + 0.5) < floor(be[j] * 1e9 + 0.5):
                            better = 1
                            break
                        if floor(e[j] * 1e9 + 0.5) > floor(be[j] * 1e9 + 0.5):
                            break
                if better:
                    bestF = F
                    bm = m; bn = n
                    for j in range(4):
                        be[j] = e[j]
        mv[i] = bm
        nv[i] = bn
        for j in range(4):
            ov[i, j] = be[j]
    return mm, nn, out
