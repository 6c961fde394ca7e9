"""Compare the compiled lattice kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Both backends are checked
for identical output before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from hypersieve import _kernels_py
from hypersieve.lattice import default_frame

try:
    from hypersieve import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def _inputs(H: int):
    frame = default_frame()
    rows = _kernels_py.enumerate_sl2(H)
    C = frame.conjugate(rows)
    return frame, (C[:, 0], C[:, 1], C[:, 2], C[:, 3], frame.mu)


def _best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--H", type=int, nargs="+", default=[10, 30, 60])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled extension not available; only the fallback can run")
        return
    print(f"{'kernel':<18}{'H':>5}{'rows':>9}{'python [s]':>13}{'cython [s]':>13}{'speedup':>9}")
    for H in args.H:
        a, b = _kernels_py.enumerate_sl2(H), _compiled.enumerate_sl2(H)
        assert np.array_equal(a, b)
        tp = _best(lambda: _kernels_py.enumerate_sl2(H), args.repeat)
        tc = _best(lambda: _compiled.enumerate_sl2(H), args.repeat)
        print(f"{'enumerate_sl2':<18}{H:>5}{len(a):>9}{tp:>13.4g}{tc:>13.4g}{tp / tc:>9.1f}")
        _, inp = _inputs(H)
        ra, rb = _kernels_py.canonical_double(*inp), _compiled.canonical_double(*inp)
        assert all(np.array_equal(x, y) for x, y in zip(ra, rb))
        tp = _best(lambda: _kernels_py.canonical_double(*inp), args.repeat)
        tc = _best(lambda: _compiled.canonical_double(*inp), args.repeat)
        print(f"{'canonical_double':<18}{H:>5}{len(a):>9}{tp:>13.4g}{tc:>13.4g}{tp / tc:>9.1f}")


if __name__ == "__main__":
    main()
