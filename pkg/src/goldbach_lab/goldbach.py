"""Goldbach representation counts g(n), G(n) and the Hardy-Littlewood prediction J(n).

Pairs are ordered throughout: 3+7 and 7+3 are two representations of 10.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np
import scipy.fft

from .errors import CapacityError, DomainError, PrecisionError
from .sieve import MangoldtTable, compensated_cumsum, simple_sieve, smallest_prime_factors

DIRECT_CAP = 10**5
CONVOLUTION_CAP = 10**7
DEFAULT_C2_PRIME_LIMIT = 10**6
ROUNDING_TOLERANCE = 0.01
# smallest nonzero G(n) is (log 2)^2 ~ 0.48; anything below this is transform noise
_G_ZERO_SNAP = 0.25


@dataclass(frozen=True)
class GoldbachTable:
    limit: int
    g: np.ndarray = field(repr=False)
    G: np.ndarray = field(repr=False)
    J: np.ndarray = field(repr=False)
    F: np.ndarray = field(repr=False)
    method: str
    C2: float

    def __post_init__(self):
        for arr in (self.g, self.G, self.J, self.F):
            arr.setflags(write=False)


@dataclass(frozen=True)
class SummarySeries:
    checkpoints: np.ndarray
    S: np.ndarray
    sumF: np.ndarray
    sumF2: np.ndarray
    Ecount: np.ndarray
    sum_g: np.ndarray


class ExceptionalSet(NamedTuple):
    exceptions: list[int]
    checkpoints: np.ndarray
    counts: np.ndarray


def twin_prime_constant(prime_limit: int = DEFAULT_C2_PRIME_LIMIT) -> tuple[float, float]:
    """Partial product for C2 over odd primes <= prime_limit, and its tail factor.

    The true constant lies in ``[value * tail_bound, value]``. The tail bound
    uses log(1 - u) >= -2u for u <= 1/4 and sum_{m >= P} 1/m^2 <= 1/(P - 1).
    """
    if prime_limit < 3:
        raise DomainError(f"prime_limit must be >= 3, got {prime_limit}")
    return _twin_prime_constant(int(prime_limit))


@lru_cache(maxsize=8)
def _twin_prime_constant(prime_limit: int) -> tuple[float, float]:
    primes = simple_sieve(prime_limit)[1:].astype(np.float64)
    log_prod = math.fsum(np.log1p(-1.0 / (primes - 1.0) ** 2))
    value = 2.0 * math.exp(log_prod)
    tail_bound = math.exp(-2.0 / (prime_limit - 1))
    return value, tail_bound


def singular_series(N: int, C2: float | None = None) -> np.ndarray:
    """J(n) for 0 <= n <= N: n C2 prod_{p | n, p > 2} (p-1)/(p-2) on even n, 0 on odd n."""
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if C2 is None:
        C2 = twin_prime_constant()[0]
    J = np.zeros(N + 1, dtype=np.float64)
    evens = np.arange(2, N + 1, 2, dtype=np.int64)
    if evens.size == 0:
        return J
    spf = smallest_prime_factors(N)
    factor = np.ones(evens.size, dtype=np.float64)
    # odd part of each even n; its prime factors are the local factors
    rem = evens >> _trailing_zeros(evens)
    while True:
        active = np.flatnonzero(rem > 1)
        if active.size == 0:
            break
        r = rem[active]
        p = spf[r]
        factor[active] *= (p - 1.0) / (p - 2.0)
        r = r // p
        divisible = r % p == 0
        while divisible.any():
            r[divisible] //= p[divisible]
            divisible = r % p == 0
        rem[active] = r
    J[evens] = evens * C2 * factor
    return J


def _trailing_zeros(values: np.ndarray) -> np.ndarray:
    return np.log2(values & -values).astype(np.int64)


def _finish(N, g, G, C2, method) -> GoldbachTable:
    if C2 is None:
        C2 = twin_prime_constant()[0]
    J = singular_series(N, C2) if N >= 2 else np.zeros(N + 1)
    return GoldbachTable(limit=N, g=g, G=G, J=J, F=G - J, method=method, C2=C2)


def _check_table(N: int, table: MangoldtTable):
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    if N > table.limit:
        raise CapacityError(f"N={N} beyond sieve limit {table.limit}")


def goldbach_direct(N: int, table: MangoldtTable, *, C2: float | None = None,
                    cap: int = DIRECT_CAP, override: bool = False) -> GoldbachTable:
    """Quadratic oracle: every n <= N summed over all splits n = m1 + m2."""
    _check_table(N, table)
    if N > cap and not override:
        raise CapacityError(
            f"direct evaluation is quadratic; N={N} exceeds cap {cap}. "
            "Use goldbach_convolution, or pass override=True."
        )
    lam = np.asarray(table.lam[: N + 1])
    flags = np.asarray(table.is_prime[: N + 1])
    g = np.zeros(N + 1, dtype=np.int64)
    G = np.zeros(N + 1, dtype=np.float64)
    for n in range(2, N + 1):
        # m1 runs over 1..n-1, m2 = n - m1 over n-1..1
        G[n] = math.fsum(lam[1:n] * lam[n - 1 : 0 : -1])
        g[n] = np.count_nonzero(flags[1:n] & flags[n - 1 : 0 : -1])
    return _finish(N, g, G, C2, "direct")


def _self_convolve(seq: np.ndarray, N: int, workers: int | None) -> np.ndarray:
    size = 1 << max(1, (2 * N - 1).bit_length())
    spectrum = scipy.fft.rfft(seq, size, workers=workers)
    out = scipy.fft.irfft(spectrum * spectrum, size, workers=workers)[: N + 1]
    # with size == 2N the n = 2N term wraps onto slot 0
    out[0] = 0.0
    return out


def goldbach_convolution(N: int, table: MangoldtTable, *, C2: float | None = None,
                         cap: int = CONVOLUTION_CAP, workers: int | None = None) -> GoldbachTable:
    """g and G as self-convolutions of the prime indicator and of Lambda.

    Raises PrecisionError when any entry of the integer convolution sits
    0.01 or more away from the nearest integer.
    """
    _check_table(N, table)
    if N > cap:
        raise CapacityError(f"N={N} exceeds convolution cap {cap}")
    lam = np.asarray(table.lam[: N + 1], dtype=np.float64)
    flags = np.asarray(table.is_prime[: N + 1], dtype=np.float64)

    raw_g = _self_convolve(flags, N, workers)
    rounded = np.rint(raw_g)
    residue = float(np.max(np.abs(raw_g - rounded)))
    if residue >= ROUNDING_TOLERANCE:
        raise PrecisionError(f"prime-pair convolution rounding residue {residue:.3g} >= {ROUNDING_TOLERANCE}")
    g = rounded.astype(np.int64)
    del raw_g, rounded

    G = _self_convolve(lam, N, workers)
    G[G < _G_ZERO_SNAP] = 0.0
    return _finish(N, g, G, C2, "convolution")


def unordered_counts(table: GoldbachTable) -> np.ndarray:
    """Representations n = p1 + p2 with p1 <= p2."""
    # for even n, g(n) = 2 * #{p1 < p2} + [n/2 prime], so g's parity flags the diagonal
    diagonal = np.zeros(table.limit + 1, dtype=np.int64)
    diagonal[4::2] = table.g[4::2] % 2
    return (table.g + diagonal) // 2


def exceptional_set(table: GoldbachTable, checkpoints: Sequence[int] | None = None) -> ExceptionalSet:
    """Even n in [4, N] with no prime-pair representation, and running counts E(x).

    n = 2 is left out: the conjecture concerns even integers greater than 2.
    """
    N = table.limit
    mask = _exception_mask(table)
    exceptions = np.flatnonzero(mask).tolist()
    if checkpoints is None:
        checkpoints = [N]
    xs = _validate_checkpoints(checkpoints, N)
    running = np.cumsum(mask)
    return ExceptionalSet(exceptions, xs, running[xs])


def _exception_mask(table: GoldbachTable) -> np.ndarray:
    mask = np.zeros(table.limit + 1, dtype=bool)
    mask[4::2] = table.g[4::2] == 0
    return mask


def _validate_checkpoints(checkpoints, N) -> np.ndarray:
    xs = np.asarray([int(x) for x in checkpoints], dtype=np.int64)
    if xs.size == 0:
        raise DomainError("no checkpoints given")
    if np.any(np.diff(xs) < 0):
        raise DomainError("checkpoints must be ascending")
    if xs[0] < 1 or xs[-1] > N:
        raise DomainError(f"checkpoints must lie in [1, {N}]")
    return xs


def summarize(table: GoldbachTable, checkpoints: Sequence[int]) -> SummarySeries:
    xs = _validate_checkpoints(checkpoints, table.limit)
    S = compensated_cumsum(table.G)
    sumF = compensated_cumsum(table.F)
    sumF2 = compensated_cumsum(table.F**2)
    sum_g = np.cumsum(table.g)
    E = np.cumsum(_exception_mask(table))
    return SummarySeries(
        checkpoints=xs, S=S[xs], sumF=sumF[xs], sumF2=sumF2[xs], Ecount=E[xs], sum_g=sum_g[xs]
    )


def landau_ratio(summary: SummarySeries) -> np.ndarray:
    """sum_{n<=x} g(n) divided by x^2 / (2 log^2 x) at each checkpoint."""
    x = summary.checkpoints.astype(np.float64)
    return summary.sum_g / (0.5 * x**2 / np.log(x) ** 2)


def write_goldbach_csv(table: GoldbachTable, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "g", "G", "J", "F"])
        for n in range(1, table.limit + 1):
            writer.writerow([n, int(table.g[n]), fmt(table.G[n]), fmt(table.J[n]), fmt(table.F[n])])


def write_summary_csv(summary: SummarySeries, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "S", "sumF", "sumF2", "E", "sum_g"])
        for i, x in enumerate(summary.checkpoints):
            writer.writerow([int(x), fmt(summary.S[i]), fmt(summary.sumF[i]),
                             fmt(summary.sumF2[i]), int(summary.Ecount[i]), int(summary.sum_g[i])])


def fmt(value: float) -> str:
    """15 significant digits, locale independent."""
    return format(float(value), ".15g")
