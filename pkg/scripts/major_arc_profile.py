"""Profile |f(z) - 1/(1-z)| * |1-z| along the major arc |z| = e^{-1/N}, |1-z| <= N^{-2/3}.

Compares the truncated power series against the explicit-formula prediction
|1-z| * |sum_rho Gamma(rho) (-log z)^{-rho}| summed over the bundled zeros.

    python3 scripts/major_arc_profile.py --N 1e4
"""
import argparse

import mpmath
import numpy as np

from goldbach_lab.explicit_formula import load_zeros, major_arc_points, power_series_eval
from goldbach_lab.sieve import build_mangoldt_table

parser = argparse.ArgumentParser()
parser.add_argument("--N", type=lambda s: int(float(s)), default=10**4)
parser.add_argument("--count", type=int, default=33)
args = parser.parse_args()

N = args.N
terms = 30 * N
table = build_mangoldt_table(terms)
zeros = load_zeros()
z = major_arc_points(N, args.count)
z = z[z.imag >= 0]
f = power_series_eval(z, table, terms)
dev = np.abs(f - 1 / (1 - z)) * np.abs(1 - z)


def zero_prediction(point):
    w = -mpmath.log(mpmath.mpc(point.real, point.imag))
    total = mpmath.mpf(0)
    for gamma in zeros.gammas:
        rho = mpmath.mpc(0.5, gamma)
        bar = mpmath.conj(rho)
        total += mpmath.gamma(rho) * w ** (-rho) + mpmath.gamma(bar) * w ** (-bar)
    return abs(complex(total)) * abs(1 - point)


print(f"N={N}, N^-2/3 = {N ** (-2 / 3):.3e}, series summed to {terms} terms")
print(f"{'|1-z|':>10} {'|1-z|N^2/3':>11} {'deviation':>10} {'zeros':>10}")
for point, d in zip(z, dev):
    r = abs(1 - point)
    print(f"{r:10.3e} {r * N ** (2 / 3):11.3f} {d:10.4f} {zero_prediction(point):10.4f}")
over = np.abs(1 - z)[dev > 0.1]
if over.size:
    print(f"deviation exceeds 0.1 from |1-z| = {over.min():.3e} ({over.min() * N ** (2 / 3):.2f} N^-2/3)")
