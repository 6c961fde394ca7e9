"""Pure-Python versions of the compiled lattice kernels (same signatures and results)."""

from __future__ import annotations

import math

import numpy as np


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _k_range(base: int, step: int, H: int, lo: int, hi: int) -> tuple[int, int]:
    if step == 0:
        return (lo, hi) if abs(base) <= H else (1, 0)
    if step > 0:
        lo2, hi2 = -((H + base) // step), (H - base) // step
    else:
        lo2, hi2 = -((base - H) // step), (-H - base) // step
    return max(lo, lo2), min(hi, hi2)


def enumerate_sl2(H: int) -> np.ndarray:
    """All PSL(2, Z) matrices with entries bounded by ``H``, one sign per class."""
    rows = [(1, b, 0, 1) for b in range(-H, H + 1)]
    for c in range(1, H + 1):
        for a in range(-H, H + 1):
            if math.gcd(a, c) != 1:
                continue
            _, x, y = _egcd(a, c)
            d0, b0 = x, -y
            lo, hi = _k_range(b0, a, H, -(1 << 60), 1 << 60)
            lo, hi = _k_range(d0, c, H, lo, hi)
            rows.extend((a, b0 + k * a, c, d0 + k * c) for k in range(lo, hi + 1))
    return np.array(rows, dtype=np.int64).reshape(-1, 4)


def canonical_double(A, Bv, Cv, D, mu: float, zero_tol: float = 1e-9):
    """Double-coset canonical form; see the compiled version for the contract."""
    A, Bv, Cv, D = (np.asarray(x, dtype=float) for x in (A, Bv, Cv, D))
    N = len(A)
    lmu = math.log(mu)
    mm = np.empty(N, dtype=np.int64)
    nn = np.empty(N, dtype=np.int64)
    out = np.empty((N, 4))
    for i in range(N):
        a, b, c, d = float(A[i]), float(Bv[i]), float(Cv[i]), float(D[i])
        if abs(a) < zero_tol or abs(d) < zero_tol:
            m0, m1 = -1, 2
        else:
            ms = math.log(abs(d) / abs(a)) / (2 * lmu)
            m0, m1 = math.floor(ms) - 1, math.ceil(ms) + 1
        if abs(b) < zero_tol or abs(c) < zero_tol:
            n0, n1 = -1, 2
        else:
            ns = math.log(abs(c) / abs(b)) / (2 * lmu)
            n0, n1 = math.floor(ns) - 2, math.ceil(ns) + 2
        best = None
        for m in range(m0, m1 + 1):
            for n in range(n0, n1 + 1):
                if (m - n) % 2:
                    continue
                e = [a * mu ** m, b * mu ** n, c * mu ** (-n), d * mu ** (-m)]
                s = 1.0
                for x in e:
                    if abs(x) > zero_tol:
                        s = -1.0 if x < 0 else 1.0
                        break
                e = [s * x + 0.0 for x in e]
                F = e[0] ** 2 + e[1] ** 2 + e[2] ** 2 + e[3] ** 2
                key = [math.floor(x * 1e9 + 0.5) for x in e]
                if best is None or F < best[0] * (1 - 1e-12):
                    best = (F, key, m, n, e)
                elif F <= best[0] * (1 + 1e-12) and key < best[1]:
                    best = (F, key, m, n, e)
        mm[i], nn[i], out[i] = best[2], best[3], best[4]
    return mm, nn, out
