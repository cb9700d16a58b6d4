"""Prime and von Mangoldt tables.

Arrays are indexed by n directly; slot 0 is unused and always zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, DomainError

MAX_LIMIT = 10**8
SEGMENT_SIZE = 1 << 20
_PREFIX_BLOCK = 4096


def simple_sieve(limit: int) -> np.ndarray:
    """Primes <= limit by a plain Eratosthenes sieve (used for base primes)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def segmented_prime_flags(limit: int, segment_size: int = SEGMENT_SIZE) -> np.ndarray:
    """Boolean primality flags over 0..limit, sieved one segment at a time."""
    flags = np.zeros(limit + 1, dtype=bool)
    base = simple_sieve(math.isqrt(limit))
    low = 2
    while low <= limit:
        high = min(low + segment_size, limit + 1)
        seg = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            seg[start - low :: p] = False
        flags[low:high] = seg
        low = high
    return flags


def compensated_cumsum(values: np.ndarray) -> np.ndarray:
    """Prefix sums with error independent of length.

    Each block of 4096 entries is summed with numpy's cumsum (small local
    magnitudes), and the block offsets are carried with Kahan summation.
    """
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    out = np.empty(n, dtype=np.float64)
    total = 0.0
    comp = 0.0
    for start in range(0, n, _PREFIX_BLOCK):
        block = np.cumsum(values[start : start + _PREFIX_BLOCK])
        out[start : start + block.size] = block + total
        # Kahan update of the running offset
        y = block[-1] - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return out


@dataclass(frozen=True)
class MangoldtTable:
    limit: int
    lam: np.ndarray = field(repr=False)
    is_prime: np.ndarray = field(repr=False)
    psi_prefix: np.ndarray = field(repr=False)

    def __post_init__(self):
        for arr in (self.lam, self.is_prime, self.psi_prefix):
            arr.setflags(write=False)

    @property
    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.is_prime)


def build_mangoldt_table(limit: int, max_limit: int = MAX_LIMIT,
                         segment_size: int = SEGMENT_SIZE) -> MangoldtTable:
    """Sieve primes up to ``limit`` and tabulate Lambda(n) and psi(n).

    Raises CapacityError for limit < 2 or limit above ``max_limit``.
    """
    limit = int(limit)
    if limit < 2:
        raise CapacityError(f"limit must be at least 2, got {limit}")
    if limit > max_limit:
        raise CapacityError(f"limit {limit} exceeds configured maximum {max_limit}")

    is_prime = segmented_prime_flags(limit, segment_size)
    lam = np.zeros(limit + 1, dtype=np.float64)
    primes = np.flatnonzero(is_prime)
    lam[primes] = np.log(primes)
    # higher prime powers p^k, k >= 2
    for p in primes[: np.searchsorted(primes, math.isqrt(limit), side="right")]:
        p = int(p)
        logp = math.log(p)
        pk = p * p
        while pk <= limit:
            lam[pk] = logp
            pk *= p
    psi = compensated_cumsum(lam)
    return MangoldtTable(limit=limit, lam=lam, is_prime=is_prime, psi_prefix=psi)


def chebyshev_psi(x: float, table: MangoldtTable) -> float:
    """psi(x) = sum of Lambda(n) over n <= x."""
    if x > table.limit:
        raise DomainError(f"x={x} beyond table limit {table.limit}")
    if x < 1:
        return 0.0
    return float(table.psi_prefix[int(math.floor(x))])


def psi_progression(x: float, q: int, a: int, table: MangoldtTable) -> float:
    """psi(x; q, a): Lambda summed over n <= x with n = a (mod q)."""
    if x > table.limit:
        raise DomainError(f"x={x} beyond table limit {table.limit}")
    if q < 1:
        raise DomainError(f"modulus must be positive, got {q}")
    n_max = int(math.floor(x))
    start = a % q or q
    if start > n_max:
        return 0.0
    return math.fsum(table.lam[start : n_max + 1 : q])


def euler_totient(q: int) -> int:
    if q < 1:
        raise DomainError(f"totient undefined for q={q}")
    result = q
    m = q
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[n] for 0 <= n <= limit (spf[0] = spf[1] = 1 by convention)."""
    spf = np.arange(limit + 1, dtype=np.int64)
    spf[:2] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            mask = block == np.arange(p * p, limit + 1, p)
            block[mask] = p
    return spf


def moebius(n: int) -> int:
    if n < 1:
        raise DomainError(f"moebius undefined for n={n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisor_count(n: int) -> int:
    count = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        count *= e + 1
        p += 1
    if n > 1:
        count *= 2
    return count


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
