"""Zeta zeros, the zero-sum oscillating term, and generating-function checks.

Zeros are assumed to lie on the critical line, rho = 1/2 + i*gamma.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DomainError, IngestionError
from .goldbach import GoldbachTable, SummarySeries, fmt
from .sieve import MangoldtTable

BUNDLED_ZEROS = "zeta_zeros_100.txt"
DEFAULT_K = 100
MIN_DEFAULT_ZEROS = 100


@dataclass(frozen=True)
class ZetaZeros:
    gammas: np.ndarray
    source: str = "unknown"

    def __post_init__(self):
        g = np.asarray(self.gammas, dtype=np.float64)
        if g.size == 0:
            raise IngestionError("no zeros")
        if np.any(g <= 0):
            raise IngestionError("zero ordinates must be positive")
        if np.any(np.diff(g) <= 0):
            raise IngestionError("zero ordinates must be strictly ascending")
        g.setflags(write=False)
        object.__setattr__(self, "gammas", g)

    def __len__(self):
        return self.gammas.size


@dataclass(frozen=True)
class ResidualScan:
    xs: np.ndarray
    K: int
    residual: np.ndarray
    normalized: np.ndarray = field(init=False)

    def __post_init__(self):
        x = np.asarray(self.xs, dtype=np.float64)
        object.__setattr__(self, "normalized", self.residual / x**1.5)

    @property
    def log5_scaled(self) -> np.ndarray:
        """residual / (x log^5 x)."""
        x = np.asarray(self.xs, dtype=np.float64)
        return self.residual / (x * np.log(x) ** 5)

    @property
    def rms_normalized(self) -> float:
        return float(np.sqrt(np.mean(self.normalized**2)))


def load_zeros(path=None, *, min_count: int = 1) -> ZetaZeros:
    """Read zero ordinates, one per line; blank lines and '#' comments are skipped.

    With no path, the bundled table of the first 100 zeros is used.
    """
    if path is None:
        ref = resources.files("goldbach_lab") / "data" / BUNDLED_ZEROS
        text = ref.read_text(encoding="utf-8")
        source = f"bundled:{BUNDLED_ZEROS}"
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise IngestionError(f"cannot read zeros file {path}: {exc}") from exc
        source = str(path)

    values = []
    previous = 0.0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            gamma = float(line)
        except ValueError:
            raise IngestionError(f"unparsable value {line!r}", line=lineno) from None
        if not math.isfinite(gamma) or gamma <= 0:
            raise IngestionError(f"non-positive value {line!r}", line=lineno)
        if gamma <= previous:
            raise IngestionError(f"{gamma} does not exceed previous {previous}", line=lineno)
        values.append(gamma)
        previous = gamma
    if not values:
        raise IngestionError(f"no zeros found in {source}")
    if len(values) < min_count:
        raise IngestionError(f"{source} holds {len(values)} zeros, need at least {min_count}")
    return ZetaZeros(np.array(values), source)


def _zero_weights(zeros: ZetaZeros, K: int) -> tuple[np.ndarray, np.ndarray]:
    if not 1 <= K <= len(zeros):
        raise DomainError(f"K must be in [1, {len(zeros)}], got {K}")
    gam = zeros.gammas[:K]
    weights = 1.0 / ((0.5 + 1j * gam) * (1.5 + 1j * gam))
    return gam, weights


def oscillating_term(x, zeros: ZetaZeros, K: int = DEFAULT_K):
    """H_K(x) = -4 x^{3/2} Re sum_{k<=K} x^{i gamma_k} / ((1/2 + i gamma_k)(3/2 + i gamma_k)).

    Accepts a scalar or an array of x >= 2.
    """
    gam, weights = _zero_weights(zeros, K)
    xs = np.asarray(x, dtype=np.float64)
    if np.any(xs < 2):
        raise DomainError("oscillating term needs x >= 2")
    phase = np.multiply.outer(np.log(xs), gam)
    terms = (np.cos(phase) + 1j * np.sin(phase)) * weights
    # np.sum reduces pairwise, so the result is reproducible
    H = -4.0 * xs**1.5 * np.sum(terms, axis=-1).real
    return float(H) if np.ndim(H) == 0 else H


def oscillating_term_bound(x, zeros: ZetaZeros, K: int = DEFAULT_K):
    """Triangle-inequality bound 4 x^{3/2} sum_{k<=K} |weight_k| on |H_K(x)|."""
    _, weights = _zero_weights(zeros, K)
    return 4.0 * np.asarray(x, dtype=np.float64) ** 1.5 * float(np.sum(np.abs(weights)))


def zero_tail_estimate(x, zeros: ZetaZeros, K: int = DEFAULT_K):
    """Heuristic size of the zeros left out beyond gamma_K.

    Weights decay like 1/gamma^2 and zeros have density log(gamma / 2 pi) / (2 pi),
    so the omitted weight is about (1 + log(gamma_K / 2 pi)) / (2 pi gamma_K).
    """
    gK = zeros.gammas[K - 1]
    omitted = (1.0 + math.log(gK / (2 * math.pi))) / (2 * math.pi * gK)
    return 4.0 * np.asarray(x, dtype=np.float64) ** 1.5 * omitted


def fujii_residual(summary: SummarySeries, zeros: ZetaZeros, K: int = DEFAULT_K) -> ResidualScan:
    """S(x) - x^2/2 - H_K(x) at each summary checkpoint."""
    xs = summary.checkpoints.astype(np.float64)
    H = oscillating_term(xs, zeros, K)
    residual = summary.S - xs**2 / 2.0 - H
    return ResidualScan(xs=summary.checkpoints.copy(), K=K, residual=np.asarray(residual))


def write_residual_csv(scans, path) -> None:
    if isinstance(scans, ResidualScan):
        scans = [scans]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "K", "residual", "normalized"])
        for scan in scans:
            for x, r, nr in zip(scan.xs, scan.residual, scan.normalized):
                writer.writerow([int(x), scan.K, fmt(r), fmt(nr)])


def dirichlet_series_partial(s: complex, table: GoldbachTable) -> complex:
    """sum_{n<=N} G(n) n^{-s}."""
    n = np.arange(4, table.limit + 1, dtype=np.float64)
    G = table.G[4:]
    nz = G != 0
    terms = G[nz] * np.exp(-complex(s) * np.log(n[nz]))
    return complex(np.sum(terms))


def power_series_eval(z, table: MangoldtTable, N: int | None = None):
    """Horner evaluation of sum_{n<=N} Lambda(n) z^n for |z| < 1 (scalar or array z)."""
    if N is None:
        N = table.limit
    if N > table.limit:
        raise DomainError(f"N={N} beyond table limit {table.limit}")
    zs = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(zs) >= 1):
        raise DomainError("power series needs |z| < 1")
    acc = np.zeros_like(zs)
    for coeff in table.lam[N:0:-1]:
        acc = acc * zs + coeff
    acc = acc * zs
    return complex(acc) if acc.ndim == 0 else acc


def kernel_eval(z, N: int):
    """K(z) = z^{-N-1} + ... + z^{-2} = z^{-N-1} (1 - z^N) / (1 - z)."""
    zs = np.asarray(z, dtype=np.complex128)
    if np.any(zs == 0):
        raise DomainError("kernel undefined at z = 0")
    near_one = np.abs(1 - zs) < 1e-12
    safe = np.where(near_one, 0.5, zs)
    closed = safe ** (-N - 1) * (1 - safe**N) / (1 - safe)
    out = np.where(near_one, N * zs ** (-N - 1), closed)
    return complex(out) if out.ndim == 0 else out


def psi_via_contour(N: int, samples: int, table: MangoldtTable) -> float:
    """(1 / 2 pi i) times the integral of f(z) K(z) over |z| = e^{-1/N}, by the trapezoid rule.

    With dz = i z dtheta the integral is the mean of f K z over equispaced
    points. f is summed to n <= N, so the highest power in f K z is z^{N-1}
    and no coefficient aliases onto z^0 once samples > N.
    """
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    if samples < 4 * N or samples & (samples - 1):
        raise DomainError(f"samples must be a power of two >= 4N = {4 * N}, got {samples}")
    R = math.exp(-1.0 / N)
    theta = 2 * np.pi * np.arange(samples) / samples
    z = R * np.exp(1j * theta)
    values = power_series_eval(z, table, N) * kernel_eval(z, N) * z
    return float(np.mean(values).real)


def kernel_window_sum(N: int, table: MangoldtTable) -> float:
    """sum_{2<=n<=N+1} Lambda(n), the exponent window of K(z) itself."""
    if N + 1 > table.limit:
        raise DomainError(f"N+1={N + 1} beyond table limit {table.limit}")
    return math.fsum(table.lam[2 : N + 2])


def major_arc_points(N: int, count: int, radius_cap: float | None = None) -> np.ndarray:
    """Points on |z| = e^{-1/N} with |1 - z| <= N^{-2/3}, symmetric about the real axis."""
    R = math.exp(-1.0 / N)
    cap = N ** (-2.0 / 3.0) if radius_cap is None else radius_cap
    # |1 - R e^{i t}|^2 = (1 - R)^2 + 4 R sin^2(t / 2)
    s2 = (cap**2 - (1 - R) ** 2) / (4 * R)
    if s2 <= 0:
        return np.array([R + 0j])
    t_max = 2 * math.asin(min(1.0, math.sqrt(s2)))
    t = np.linspace(-t_max, t_max, count)
    return R * np.exp(1j * t)


def major_arc_deviation(N: int, table: MangoldtTable, count: int = 64, terms: int | None = None) -> np.ndarray:
    """|f(z) - 1/(1-z)| * |1-z| at sampled major-arc points.

    f is summed to ``terms`` (default: whole table); with |z| = e^{-1/N}
    the omitted tail is about e^{-terms/N} / |1-z|.
    """
    z = major_arc_points(N, count)
    f = power_series_eval(z, table, terms)
    return np.abs(f - 1 / (1 - z)) * np.abs(1 - z)
