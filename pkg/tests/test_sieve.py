import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_lab.errors import CapacityError, DomainError
from goldbach_lab.sieve import (
    build_mangoldt_table,
    chebyshev_psi,
    compensated_cumsum,
    divisor_count,
    divisors,
    euler_totient,
    moebius,
    psi_progression,
    segmented_prime_flags,
    simple_sieve,
    smallest_prime_factors,
)


def trial_prime_power_base(n):
    """Return p if n = p^k (k >= 1) by trial division, else None."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def test_small_values():
    t = build_mangoldt_table(10)
    assert t.lam[8] == pytest.approx(math.log(2))
    assert t.lam[6] == 0
    assert t.lam[9] == pytest.approx(math.log(3))
    assert t.lam[1] == 0 and t.lam[0] == 0


def test_psi_10_by_hand():
    t = build_mangoldt_table(10)
    expected = 3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7)
    assert chebyshev_psi(10, t) == pytest.approx(expected, rel=1e-15)
    assert chebyshev_psi(10, t) == pytest.approx(7.8319, abs=2e-4)


def test_smallest_table():
    t = build_mangoldt_table(2)
    assert t.lam[2] == pytest.approx(math.log(2))
    assert chebyshev_psi(2, t) == pytest.approx(math.log(2))


def test_limits_rejected():
    with pytest.raises(CapacityError):
        build_mangoldt_table(1)
    with pytest.raises(CapacityError):
        build_mangoldt_table(10**6, max_limit=10**5)


def test_psi_queries(table_small):
    assert chebyshev_psi(1, table_small) == 0
    assert chebyshev_psi(10.7, table_small) == chebyshev_psi(10, table_small)
    with pytest.raises(DomainError):
        chebyshev_psi(table_small.limit + 1, table_small)


def test_support_matches_trial_division(table_small):
    for n in range(1, 10**4 + 1):
        p = trial_prime_power_base(n)
        if p is None:
            assert table_small.lam[n] == 0, n
        else:
            assert table_small.lam[n] == pytest.approx(math.log(p), rel=1e-15), n
        assert bool(table_small.is_prime[n]) == (p == n), n
    for n in range(1, 500):
        two_divisors = sum(1 for d in range(1, n + 1) if n % d == 0) == 2
        assert bool(table_small.is_prime[n]) == two_divisors


def test_segmented_matches_simple_across_segment_boundaries():
    flags = segmented_prime_flags(5000, segment_size=97)
    assert np.array_equal(np.flatnonzero(flags), simple_sieve(5000))


def test_psi_prefix_nondecreasing(table_small):
    assert np.all(np.diff(table_small.psi_prefix) >= 0)


def test_pnt_corridor(table_1e6):
    xs = np.arange(10**5, 10**6 + 1, 997)
    ratio = table_1e6.psi_prefix[xs] / xs
    assert np.all((ratio > 0.9) & (ratio < 1.1))
    assert abs(chebyshev_psi(10**6, table_1e6) / 10**6 - 1) < 0.003


def test_psi_progression_direct_filter(table_small):
    # n <= 20, n = 1 mod 4 with Lambda(n) > 0: 5, 9, 13, 17
    expected = math.log(5) + math.log(3) + math.log(13) + math.log(17)
    assert psi_progression(20, 4, 1, table_small) == pytest.approx(expected, rel=1e-14)
    assert psi_progression(10, 1, 0, table_small) == pytest.approx(chebyshev_psi(10, table_small))


@pytest.mark.parametrize("q", [1, 2, 3, 7, 12, 30, 64, 97, 100])
@pytest.mark.parametrize("x", [1, 17, 1000, 10**4])
def test_psi_partition(table_small, q, x):
    total = math.fsum(psi_progression(x, q, a, table_small) for a in range(q))
    assert total == pytest.approx(chebyshev_psi(x, table_small), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("q, phi", [(1, 1), (2, 1), (12, 4), (13, 12), (36, 12), (97, 96), (100, 40)])
def test_totient_examples(q, phi):
    assert euler_totient(q) == phi


@given(st.integers(1, 2000))
def test_totient_counts_coprime_residues(q):
    assert euler_totient(q) == sum(1 for a in range(1, q + 1) if math.gcd(a, q) == 1)


@given(st.integers(1, 3000))
def test_divisor_helpers(n):
    brute = [d for d in range(1, n + 1) if n % d == 0]
    assert divisors(n) == brute
    assert divisor_count(n) == len(brute)
    # sum of mu over divisors is [n == 1]
    assert sum(moebius(d) for d in brute) == (1 if n == 1 else 0)


def test_smallest_prime_factors():
    spf = smallest_prime_factors(500)
    for n in range(2, 501):
        assert spf[n] == next(d for d in range(2, n + 1) if n % d == 0)


@settings(max_examples=50)
@given(st.lists(st.floats(0, 20, allow_nan=False), min_size=1, max_size=10000))
def test_compensated_cumsum_matches_exact(values):
    out = compensated_cumsum(np.array(values))
    exact = Fraction(0)
    for i, v in enumerate(values):
        exact += Fraction(v)
        if i % 997 == 0 or i == len(values) - 1:
            assert abs(out[i] - float(exact)) <= 1e-12 * max(1.0, float(exact))
