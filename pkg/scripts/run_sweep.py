#!/usr/bin/env python3
"""Dyadic eigenvalue-minimisation sweep: one optimal box per k = 2^0..2^E.

Writes the record table as CSV and prints the convergence summary (decade
medians of delta_k = a3* - 1 and the fitted decay exponent) to stderr.

    python3 scripts/run_sweep.py --max-exp 14 --threads 4 --out sweep.csv
"""

import argparse
import statistics
import sys

from eigenbox.optimize import InsufficientSpanError, OptimizerConfig, rate_fit, sweep
from eigenbox.reporting import write_optimize_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-exp", type=int, default=10,
                        help="largest exponent E; sweeps k = 1, 2, ..., 2^E")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--grid", type=int, default=64)
    parser.add_argument("--basins", type=int, default=8)
    parser.add_argument("--out", default=None, help="CSV path (default: stdout)")
    args = parser.parse_args()

    ks = [2**e for e in range(0, args.max_exp + 1)]
    config = OptimizerConfig(
        grid_n=args.grid, basins=args.basins, seed=args.seed, threads=args.threads
    )
    records = sweep(ks, config)

    if args.out:
        with open(args.out, "w", newline="") as handle:
            write_optimize_csv(handle, records)
    else:
        write_optimize_csv(sys.stdout, records)

    good = [r for r in records if r.cuboid is not None]
    deltas = {r.k: r.delta for r in good}
    bottom = [d for k, d in deltas.items() if k <= 10 * min(ks)]
    top = [d for k, d in deltas.items() if k >= max(ks) / 10]
    print(f"bottom-decade median delta: {statistics.median(bottom):.6f}", file=sys.stderr)
    print(f"top-decade median delta:    {statistics.median(top):.6f}", file=sys.stderr)
    try:
        exponent, info = rate_fit(good)
        print(
            f"fitted decay exponent: {exponent:.4f} "
            f"(stderr {info.stderr:.4f}, n={info.n_used}, reference -23/258 = -0.0891)",
            file=sys.stderr,
        )
    except InsufficientSpanError as exc:
        print(f"rate fit unavailable: {exc}", file=sys.stderr)
    return 0 if good else 1


if __name__ == "__main__":
    raise SystemExit(main())
