"""Residual of the zero-sum approximation to sum_{n<=x} G(n), by number of zeros.

Prints |residual| / (x log^5 x) at each decade and the RMS of residual / x^{3/2}
over a log-spaced grid, and fits the smooth part of the residual as c * x.

    python3 scripts/residual_scan.py --limit 1e6
"""
import argparse

import numpy as np

from goldbach_lab.explicit_formula import fujii_residual, load_zeros
from goldbach_lab.goldbach import goldbach_convolution, summarize
from goldbach_lab.sieve import build_mangoldt_table

parser = argparse.ArgumentParser()
parser.add_argument("--limit", type=lambda s: int(float(s)), default=10**6)
parser.add_argument("--K", default="10,25,50,100")
parser.add_argument("--points", type=int, default=200)
args = parser.parse_args()

N = args.limit
Ks = [int(k) for k in args.K.split(",")]
zeros = load_zeros(min_count=max(Ks))
table = goldbach_convolution(N, build_mangoldt_table(N))

decades = [10**k for k in range(4, 9) if 10**k <= N]
print("x        " + "".join(f"K={K:<12d}" for K in Ks))
for x in decades:
    s = summarize(table, [x])
    row = [abs(fujii_residual(s, zeros, K).residual[0]) / (x * np.log(x) ** 5) for K in Ks]
    print(f"{x:<9d}" + "".join(f"{v:<14.3e}" for v in row))

grid = np.unique(np.geomspace(N // 100, N, args.points).astype(np.int64))
s = summarize(table, grid)
print(f"\nRMS residual / x^1.5 over {grid.size} points in [{grid[0]}, {N}]")
for K in Ks:
    scan = fujii_residual(s, zeros, K)
    # least-squares slope of residual against x; the rest is the zero tail and jumps
    slope = float(np.dot(scan.residual, grid) / np.dot(grid, grid))
    print(f"  K={K:<4d} rms {scan.rms_normalized:.6f}   residual ~ {slope:.3f} x")
