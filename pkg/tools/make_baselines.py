"""Regenerate ``src/hypersieve/data/baseline_constants.txt``.

Runs every bound clause over the stability grid and records ``ratio_sup``
together with the measured spacing constant.  Takes several minutes.
"""
from __future__ import annotations

import argparse
import json
import time

from hypersieve.sieve import spacing_constant
from hypersieve.window import CLAUSES, WindowParams, baseline_key, run_clause, write_baseline

T_GRID = (1, 2, 4, 8, 16, 32, 64)
R_GRID = (0.01, 0.05, 0.1, 0.3, 0.5)

def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", help="also dump the values as JSON here")
    args = ap.parse_args(argv)
    values: dict[str, float] = {}
    t0 = time.perf_counter()
    for T in T_GRID:
        for r in R_GRID:
            p = WindowParams(T, r)
            for c in CLAUSES:
                values[baseline_key(c, T, r)] = run_clause(c, p).ratio_sup
            print(f"T={T} r={r} done at {time.perf_counter() - t0:.1f}s", flush=True)
    C, _ = spacing_constant()
    values["spacing/C"] = C
    path = write_baseline(values, header="ratio_sup per clause/T/r and the measured spacing constant")
    print(f"wrote {path} in {time.perf_counter() - t0:.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(values, fh, indent=1, sort_keys=True)

if __name__ == "__main__":
    main()
