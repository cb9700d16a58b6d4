"""Goldbach sums in residue classes, and large-sieve style checks on finite sequences.

A SequenceWindow holds a_1..a_N; ``a[0]`` is a_1. Residue sums are
Z(q, h) = sum_{n <= N, n = h (mod q)} a_n and T(alpha) = sum a_n e(alpha n).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError
from .goldbach import GoldbachTable, _exception_mask, fmt
from .sieve import MangoldtTable, compensated_cumsum, divisor_count, divisors, euler_totient, moebius

EQUALS = "equals"
LEQ = "leq"
IDENTITY_TOL = 1e-9


@dataclass(frozen=True)
class IdentityCheck:
    lhs: float
    rhs: float
    relation: str
    tolerance: float
    params: dict = field(default_factory=dict, compare=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        if self.relation == EQUALS:
            ok = abs(self.lhs - self.rhs) <= self.tolerance * max(1.0, abs(self.rhs))
        elif self.relation == LEQ:
            ok = self.lhs <= self.rhs * (1 + self.tolerance)
        else:
            raise DomainError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "passed", bool(ok))

    @property
    def ratio(self) -> float:
        if self.rhs == 0:
            return 0.0 if self.lhs == 0 else math.inf
        return self.lhs / self.rhs


@dataclass(frozen=True)
class SequenceWindow:
    a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=np.complex128).ravel())

    @property
    def N(self) -> int:
        return self.a.size

    @property
    def Z(self) -> complex:
        return complex(np.sum(self.a))

    @classmethod
    def from_indicator(cls, flags) -> "SequenceWindow":
        """Window a_n = flags[n] for n = 1..len(flags)-1 (slot 0 ignored)."""
        return cls(np.asarray(flags, dtype=np.float64)[1:])


@dataclass(frozen=True)
class ProgressionReport:
    x: float
    q: int
    entries: dict
    exceptional: dict
    delta_restricted: float
    delta_unrestricted: float
    dq: dict


# -- Goldbach sums in progressions ------------------------------------------------

def _class_lambda(table: MangoldtTable, n_max: int, q: int, residue: int) -> np.ndarray:
    out = np.zeros(n_max + 1, dtype=np.float64)
    start = residue % q or q
    out[start::q] = table.lam[start : n_max + 1 : q]
    return out


def goldbach_progression_sum(x: float, q: int, a: int, b: int, table: MangoldtTable) -> float:
    """S(x; q, a, b): Lambda(l) Lambda(m) over l + m <= x with l = a, m = b (mod q).

    Summing over n <= x first turns the double sum into
    sum_l Lambda_a(l) psi(x - l; q, b), which is linear in x.
    """
    if q < 1:
        raise DomainError(f"modulus must be positive, got {q}")
    n_max = int(math.floor(x))
    if n_max > table.limit:
        raise DomainError(f"x={x} beyond table limit {table.limit}")
    if n_max < 2:
        return 0.0
    left = _class_lambda(table, n_max, q, a)
    right_prefix = compensated_cumsum(_class_lambda(table, n_max, q, b))
    ell = np.arange(1, n_max)
    return math.fsum(left[1:n_max] * right_prefix[n_max - ell])


def progression_grid(x: float, q: int, table: MangoldtTable) -> dict:
    """S(x; q, a, b) for every residue pair (a, b) mod q."""
    n_max = int(math.floor(x))
    if n_max > table.limit:
        raise DomainError(f"x={x} beyond table limit {table.limit}")
    lefts = [_class_lambda(table, n_max, q, a) for a in range(q)]
    prefixes = [compensated_cumsum(row) for row in lefts]
    grid = {}
    for a in range(q):
        start = a or q
        ell = np.arange(start, n_max, q)
        weights = lefts[a][ell]
        for b in range(q):
            grid[(a, b)] = math.fsum(weights * prefixes[b][n_max - ell]) if ell.size else 0.0
    return grid


def progression_exceptions(x: float, q: int, table: GoldbachTable) -> dict:
    """E_{h,q}(x) for h = 0..q-1 (even n in [4, x] without a prime-pair representation)."""
    if q < 1:
        raise DomainError(f"modulus must be positive, got {q}")
    n_max = min(int(math.floor(x)), table.limit)
    mask = _exception_mask(table)[: n_max + 1]
    counts = np.bincount(np.flatnonzero(mask) % q, minlength=q)
    return {h: int(counts[h]) for h in range(q)}


def exceptional_residues(x: float, q: int, C: float, counts: dict) -> tuple[set, float]:
    """Residues h with E_{h,q}(x) > x / (q log^C x), and the reference size q / log^C x."""
    if C <= 0:
        raise DomainError(f"C must be positive, got {C}")
    logc = math.log(x) ** C
    threshold = x / (q * logc)
    flagged = {h for h, count in counts.items() if count > threshold}
    return flagged, q / logc


def generic_progression_count(B: Callable[[int], bool], x: float, q: int, h: int) -> int:
    """#{n <= x : n in B, n = h (mod q)}."""
    n_max = int(math.floor(x))
    start = h % q or q
    return sum(1 for n in range(start, n_max + 1, q) if B(n))


def delta_q(x: float, q: int, table: MangoldtTable, restricted: bool = True) -> float:
    """max over residues a of |psi(x; q, a) - x / phi(q)|; coprime a only when restricted."""
    n_max = int(math.floor(x))
    if n_max > table.limit:
        raise DomainError(f"x={x} beyond table limit {table.limit}")
    n = np.arange(1, n_max + 1)
    class_psi = np.bincount(n % q, weights=table.lam[1 : n_max + 1], minlength=q)
    residues = [a for a in range(q) if not restricted or math.gcd(a, q) == 1]
    main = x / euler_totient(q)
    return float(max(abs(class_psi[a] - main) for a in residues))


def dq_sum(x: float, q: int, c: int, table: GoldbachTable) -> float:
    """sum_{n <= x, n = c (mod q)} F(n)."""
    n_max = min(int(math.floor(x)), table.limit)
    start = c % q or q
    return math.fsum(table.F[start : n_max + 1 : q])


def progression_report(x: float, q: int, mtable: MangoldtTable, gtable: GoldbachTable) -> ProgressionReport:
    return ProgressionReport(
        x=x,
        q=q,
        entries=progression_grid(x, q, mtable),
        exceptional=progression_exceptions(x, q, gtable),
        delta_restricted=delta_q(x, q, mtable, restricted=True),
        delta_unrestricted=delta_q(x, q, mtable, restricted=False),
        dq={c: dq_sum(x, q, c, gtable) for c in range(q)},
    )


# -- Finite sequences ----------------------------------------------------------

def residue_sums(w: SequenceWindow, q: int) -> np.ndarray:
    """Z(q, h) for h = 0..q-1."""
    classes = np.arange(1, w.N + 1) % q
    re = np.bincount(classes, weights=w.a.real, minlength=q)
    im = np.bincount(classes, weights=w.a.imag, minlength=q)
    return re + 1j * im


def exponential_sum(alpha: float, w: SequenceWindow) -> complex:
    n = np.arange(1, w.N + 1)
    return complex(np.sum(w.a * np.exp(2j * np.pi * alpha * n)))


def exponential_sum_rational(b: int, d: int, w: SequenceWindow) -> complex:
    """T(b/d) with the phase reduced mod d before exponentiating."""
    n = np.arange(1, w.N + 1)
    return complex(np.sum(w.a * np.exp(2j * np.pi * ((b * n) % d) / d)))


def _coprime_power(d: int, w: SequenceWindow, include_d: bool = True) -> float:
    stop = d + 1 if include_d else d
    return math.fsum(
        abs(exponential_sum_rational(b, d, w)) ** 2 for b in range(1, stop) if math.gcd(b, d) == 1
    )


def montgomery_identity(q: int, w: SequenceWindow, tolerance: float = IDENTITY_TOL) -> IdentityCheck:
    """q sum_h |sum_{d|q} mu(d)/d Z(q/d, h)|^2 against sum_{(a,q)=1} |T(a/q)|^2."""
    if q < 1:
        raise DomainError(f"modulus must be positive, got {q}")
    combo = np.zeros(q, dtype=np.complex128)
    h = np.arange(q)
    for d in divisors(q):
        mu = moebius(d)
        if mu:
            r = q // d
            combo += mu / d * residue_sums(w, r)[h % r]
    lhs = q * math.fsum(np.abs(combo) ** 2)
    rhs = _coprime_power(q, w)
    return IdentityCheck(lhs, rhs, EQUALS, tolerance, {"q": q, "N": w.N})


def large_sieve_weights(M: Iterable[int]) -> dict:
    """M'_d = sum over t with t d in M of tau(t d) / t, for every d dividing some m in M."""
    weights: dict[int, float] = {}
    for m in sorted(set(M)):
        tau = divisor_count(m)
        for d in divisors(m):
            weights[d] = weights.get(d, 0.0) + tau * d / m
    return weights


def t1_check(M: Sequence[int], w: SequenceWindow, variant: str = "centered",
             tolerance: float = IDENTITY_TOL) -> IdentityCheck:
    """Mean square of residue-class sums against the weighted large-sieve sum.

    centered: sum_m m max_h |Z(m,h) - Z/m|^2 <= sum_{d>=2} M'_d sum_{0<b<d, (b,d)=1} |T(b/d)|^2
    plain:    sum_m m max_h |Z(m,h)|^2      <= sum_{d>=1} M'_d sum_{0<b<=d, (b,d)=1} |T(b/d)|^2
    M'_d vanishes for d > max(M), so the d-sum stops there.
    """
    if variant not in ("centered", "plain"):
        raise DomainError(f"unknown variant {variant!r}")
    moduli = sorted(set(int(m) for m in M))
    if not moduli or moduli[0] < 1:
        raise DomainError("M must be a nonempty set of positive moduli")
    lhs_terms = []
    for m in moduli:
        sums = residue_sums(w, m)
        if variant == "centered":
            # Z from the same class sums, so Z(1, 0) - Z cancels exactly
            sums = sums - sums.sum() / m
        lhs_terms.append(m * float(np.max(np.abs(sums) ** 2)))
    lhs = math.fsum(lhs_terms)

    weights = large_sieve_weights(moduli)
    d_min = 2 if variant == "centered" else 1
    rhs = math.fsum(
        weight * _coprime_power(d, w) for d, weight in sorted(weights.items()) if d >= d_min
    )
    return IdentityCheck(lhs, rhs, LEQ, tolerance,
                         {"variant": variant, "M": " ".join(map(str, moduli)), "N": w.N})


@dataclass(frozen=True)
class T2Report:
    Q: float
    H: float
    E1: float
    E2: float
    rhs_term1: float
    rhs_term2: float

    @property
    def fitted_constant(self) -> float:
        """Smallest c with E1 + E2 <= c (term1 + term2)."""
        rhs = self.rhs_term1 + self.rhs_term2
        return 0.0 if rhs == 0 else (self.E1 + self.E2) / rhs


def t2_decomposition(Q: float, H: float, w: SequenceWindow) -> T2Report:
    """Split sum_{Q<m<=2Q} m max_h |Z(m,h)|^2 by tau(m) > H (E1) and tau(m) <= H (E2)."""
    if Q <= 1 or H <= 0:
        raise DomainError(f"need Q > 1 and H > 0, got Q={Q}, H={H}")
    E1, E2 = [], []
    for m in range(int(math.floor(Q)) + 1, int(math.floor(2 * Q)) + 1):
        value = m * float(np.max(np.abs(residue_sums(w, m)) ** 2))
        (E1 if divisor_count(m) > H else E2).append(value)
    N = w.N
    power = np.abs(w.a) ** 2
    peak = float(power.max()) if N else 0.0
    logQ = math.log(Q)
    term1 = (N**2 + Q**2) * logQ / H * peak
    term2 = (N + Q**2) * H * logQ * math.fsum(power)
    return T2Report(Q, H, math.fsum(E1), math.fsum(E2), term1, term2)


def halasz_row_check(Q: float, x: float, a: int, v: SequenceWindow) -> IdentityCheck:
    """sum_{Q<q<=2Q} |sum_{n<=x, n = a (q)} v_n| against ||v||_2 x^{1/2} log^{3/2} x.

    The comparison uses constant 1; ``ratio`` on the result is the fitted constant.
    """
    if a >= x:
        raise DomainError(f"need a < x, got a={a}, x={x}")
    n_max = min(int(math.floor(x)), v.N)
    vals = v.a[:n_max]
    n = np.arange(1, n_max + 1)
    lhs_terms = []
    for q in range(int(math.floor(Q)) + 1, int(math.floor(2 * Q)) + 1):
        lhs_terms.append(abs(complex(np.sum(vals[(n - a) % q == 0]))))
    lhs = math.fsum(lhs_terms)
    rhs = math.sqrt(math.fsum(np.abs(vals) ** 2)) * math.sqrt(x) * math.log(x) ** 1.5
    return IdentityCheck(lhs, rhs, LEQ, 0.0, {"Q": Q, "x": x, "a": a})


def max_class_counts(indicator: np.ndarray, x: float, Q: float) -> dict:
    """max_h B_{h,q}(x) for each modulus Q < q <= 2Q; indicator[n] flags n in B."""
    n_max = int(math.floor(x))
    members = np.flatnonzero(np.asarray(indicator[: n_max + 1], dtype=bool))
    members = members[members >= 1]
    out = {}
    for q in range(int(math.floor(Q)) + 1, int(math.floor(2 * Q)) + 1):
        out[q] = int(np.bincount(members % q, minlength=q).max()) if members.size else 0
    return out


def sparse_set_ratio(indicator: np.ndarray, x: float, Q: float) -> float:
    """sum_{q~Q} max_h B_{h,q}(x) divided by x^{3/4} B(x)^{1/4} log^{1/2} Q."""
    n_max = int(math.floor(x))
    count = int(np.count_nonzero(np.asarray(indicator[1 : n_max + 1], dtype=bool)))
    if count == 0:
        return 0.0
    lhs = sum(max_class_counts(indicator, x, Q).values())
    return lhs / (x**0.75 * count**0.25 * math.sqrt(math.log(Q)))


def exceptional_moduli(indicator: np.ndarray, x: float, Q: float, C: float) -> set:
    """Moduli q ~ Q with B_{h,q}(x) > x / (q log^C x) for some h."""
    logc = math.log(x) ** C
    return {q for q, peak in max_class_counts(indicator, x, Q).items() if peak > x / (q * logc)}


# -- Seeded suites -------------------------------------------------------------

def random_window(rng: np.random.Generator, N: int) -> SequenceWindow:
    return SequenceWindow(rng.standard_normal(N) + 1j * rng.standard_normal(N))


def montgomery_suite(seed: int, count: int = 200, max_q: int = 64, max_N: int = 512) -> list[IdentityCheck]:
    rng = np.random.default_rng(seed)
    checks = []
    for _ in range(count):
        q = int(rng.integers(1, max_q + 1))
        N = int(rng.integers(1, max_N + 1))
        check = montgomery_identity(q, random_window(rng, N))
        check.params["seed"] = seed
        checks.append(check)
    return checks


def t1_suite(seed: int, count: int = 200, max_m: int = 64, max_N: int = 512,
             max_size: int = 8) -> list[IdentityCheck]:
    """Both variants on ``count`` random (M, window) instances."""
    rng = np.random.default_rng(seed)
    checks = []
    for _ in range(count):
        size = int(rng.integers(1, max_size + 1))
        M = sorted(set(int(m) for m in rng.integers(1, max_m + 1, size=size)))
        w = random_window(rng, int(rng.integers(1, max_N + 1)))
        for variant in ("centered", "plain"):
            check = t1_check(M, w, variant)
            check.params["seed"] = seed
            checks.append(check)
    return checks


def write_checks_csv(checks: Iterable[IdentityCheck], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["relation", "lhs", "rhs", "tolerance", "pass", "seed", "parameters"])
        for c in checks:
            params = {k: v for k, v in c.params.items() if k != "seed"}
            writer.writerow([
                c.relation, fmt(c.lhs), fmt(c.rhs), fmt(c.tolerance), str(c.passed).lower(),
                c.params.get("seed", ""), ";".join(f"{k}={v}" for k, v in sorted(params.items())),
            ])


def write_progression_csv(report: ProgressionReport, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["kind", "x", "q", "key", "value"])
        for (a, b), value in sorted(report.entries.items()):
            writer.writerow(["S", int(report.x), report.q, f"{a}:{b}", fmt(value)])
        for h, count in sorted(report.exceptional.items()):
            writer.writerow(["E", int(report.x), report.q, h, count])
        writer.writerow(["delta_restricted", int(report.x), report.q, "", fmt(report.delta_restricted)])
        writer.writerow(["delta_unrestricted", int(report.x), report.q, "", fmt(report.delta_unrestricted)])
        for c, value in sorted(report.dq.items()):
            writer.writerow(["D", int(report.x), report.q, c, fmt(value)])
