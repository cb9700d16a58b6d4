"""Command line driver: ``goldbach-lab {sieve,goldbach,fujii,progressions,verify-all}``.

Exit status: 0 success, 2 usage, 3 data/ingestion, 4 precision failure.
"""
from __future__ import annotations

import argparse
import csv
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import explicit_formula as ef
from . import goldbach as gb
from . import progressions as pr
from .errors import GoldbachLabError, IngestionError, PrecisionError
from .sieve import build_mangoldt_table, chebyshev_psi

log = logging.getLogger("goldbach_lab")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_PRECISION = 0, 2, 3, 4
DEFAULT_CONFIG = "goldbach_lab.cfg"
OUT_ENV = "GOLDBACH_LAB_OUT"


class UsageError(GoldbachLabError):
    exit_status = EXIT_USAGE


@dataclass
class RunConfig:
    limit: int = 10**4
    checkpoints: list[int] = field(default_factory=list)
    zeros_path: str | None = None
    K: list[int] = field(default_factory=lambda: [25, 50, 100])
    seed: int = 0
    output_dir: Path = Path("out")
    moduli: list[int] = field(default_factory=lambda: [3, 4, 5])
    C: list[float] = field(default_factory=lambda: [1.0])
    threads: int | None = None
    method: str = "convolution"

    def validate(self):
        if self.limit < 2:
            raise UsageError(f"--limit must be at least 2, got {self.limit}")
        if any(x > self.limit or x < 1 for x in self.checkpoints):
            raise UsageError("checkpoints must lie in [1, limit]")
        if self.checkpoints != sorted(self.checkpoints):
            raise UsageError("checkpoints must be ascending")
        if any(k < 1 for k in self.K):
            raise UsageError("K must be at least 1")
        if self.method not in ("direct", "convolution", "verify"):
            raise UsageError(f"unknown method {self.method!r}")


def _int_list(text):
    return [int(float(t)) for t in str(text).replace(",", " ").split()]


def _float_list(text):
    return [float(t) for t in str(text).replace(",", " ").split()]


_CONVERTERS = {
    "limit": lambda s: int(float(s)),
    "checkpoints": _int_list,
    "zeros": str,
    "K": _int_list,
    "seed": int,
    "out": str,
    "moduli": _int_list,
    "C": _float_list,
    "threads": int,
    "method": str,
}


def read_config_file(path) -> dict:
    """key=value lines; '#' starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-")
        if not sep or key not in _CONVERTERS:
            raise UsageError(f"{path}:{lineno}: expected key=value with a known key, got {raw!r}")
        try:
            values[key] = _CONVERTERS[key](value.strip())
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    settings = {}
    config_path = args.config or (DEFAULT_CONFIG if Path(DEFAULT_CONFIG).is_file() else None)
    if config_path:
        if not Path(config_path).is_file():
            raise UsageError(f"config file {config_path} not found")
        settings.update(read_config_file(config_path))
    for key in _CONVERTERS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value

    cfg = RunConfig()
    if "limit" in settings:
        cfg.limit = settings["limit"]
    cfg.checkpoints = settings.get("checkpoints") or default_checkpoints(cfg.limit)
    cfg.zeros_path = settings.get("zeros")
    cfg.K = settings.get("K", cfg.K)
    cfg.seed = settings.get("seed", cfg.seed)
    cfg.output_dir = Path(os.environ.get(OUT_ENV) or settings.get("out") or cfg.output_dir)
    cfg.moduli = settings.get("moduli", cfg.moduli)
    cfg.C = settings.get("C", cfg.C)
    cfg.threads = settings.get("threads", cfg.threads)
    cfg.method = settings.get("method", cfg.method)
    cfg.validate()
    return cfg


def default_checkpoints(limit: int) -> list[int]:
    points = [10**k for k in range(1, int(math.log10(max(limit, 10))) + 1) if 10**k <= limit]
    if not points or points[-1] != limit:
        points.append(limit)
    return points


def fujii_grid(limit: int, count: int = 200) -> list[int]:
    """Log-spaced integer checkpoints over [limit/100, limit] (at least 2)."""
    low = max(2, limit // 100)
    return sorted(set(np.geomspace(low, limit, count).astype(np.int64).tolist()) | {limit})


def _out(cfg: RunConfig, name: str) -> Path:
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    return cfg.output_dir / name


# -- subcommands ------------------------------------------------------------------

def cmd_sieve(cfg: RunConfig) -> int:
    table = build_mangoldt_table(cfg.limit)
    path = _out(cfg, "mangoldt_summary.csv")
    prime_counts = np.cumsum(table.is_prime)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["x", "prime_count", "psi", "psi_over_x"])
        for x in cfg.checkpoints:
            psi = chebyshev_psi(x, table)
            writer.writerow([x, int(prime_counts[x]), gb.fmt(psi), gb.fmt(psi / x)])
    log.info("wrote %s", path)
    return EXIT_OK


def _goldbach_table(cfg: RunConfig, mtable, method=None) -> gb.GoldbachTable:
    method = method or cfg.method
    if method == "direct":
        return gb.goldbach_direct(cfg.limit, mtable)
    return gb.goldbach_convolution(cfg.limit, mtable, workers=cfg.threads)


def cmd_goldbach(cfg: RunConfig) -> int:
    mtable = build_mangoldt_table(cfg.limit)
    if cfg.method == "verify":
        direct = gb.goldbach_direct(cfg.limit, mtable)
        conv = gb.goldbach_convolution(cfg.limit, mtable, workers=cfg.threads)
        g_ok = np.array_equal(direct.g, conv.g)
        rel = np.abs(direct.G - conv.G) / np.maximum(np.abs(direct.G), 1.0)
        G_ok = bool(np.all(rel <= 1e-6))
        print(f"verify: g exact match {g_ok}; G max relative deviation {rel.max():.3e}")
        if not (g_ok and G_ok):
            raise PrecisionError("direct and convolution tables disagree")
        table = conv
    else:
        table = _goldbach_table(cfg, mtable)
    gb.write_goldbach_csv(table, _out(cfg, "goldbach_table.csv"))
    summary = gb.summarize(table, cfg.checkpoints)
    gb.write_summary_csv(summary, _out(cfg, "goldbach_summary.csv"))
    exc = gb.exceptional_set(table, cfg.checkpoints)
    with open(_out(cfg, "exceptions.csv"), "w", encoding="utf-8") as fh:
        fh.write("n\n" + "".join(f"{n}\n" for n in exc.exceptions))
    print(f"exceptional even n in [4, {cfg.limit}]: {len(exc.exceptions)}")
    return EXIT_OK


PLOT_TEMPLATE = """\
# gnuplot script: normalized residual (S(x) - x^2/2 - H_K(x)) / x^(3/2) against log x
set datafile separator ','
set key autotitle columnhead
set xlabel 'log x'
set ylabel 'residual / x^{{3/2}}'
set terminal pngcairo size 900,600
set output '{png}'
plot {plots}
"""


def write_plot_script(path: Path, csv_name: str, Ks) -> None:
    plots = ", \\\n     ".join(
        f"'{csv_name}' using (log($1)):($2=={K} ? $4 : 1/0) with linespoints title 'K={K}'" for K in Ks
    )
    path.write_text(PLOT_TEMPLATE.format(png=Path(csv_name).stem + ".png", plots=plots), encoding="utf-8")


def cmd_fujii(cfg: RunConfig) -> int:
    zeros = ef.load_zeros(cfg.zeros_path)
    if max(cfg.K) > len(zeros):
        raise UsageError(f"K={max(cfg.K)} exceeds the {len(zeros)} zeros available")
    mtable = build_mangoldt_table(cfg.limit)
    table = gb.goldbach_convolution(cfg.limit, mtable, workers=cfg.threads)
    summary = gb.summarize(table, [x for x in fujii_grid(cfg.limit) if x >= 2])
    scans = [ef.fujii_residual(summary, zeros, K) for K in cfg.K]
    ef.write_residual_csv(scans, _out(cfg, "fujii_residuals.csv"))
    write_plot_script(_out(cfg, "fujii_plot.gp"), "fujii_residuals.csv", cfg.K)
    for scan in scans:
        print(f"K={scan.K}: RMS normalized residual {scan.rms_normalized:.6e}")
    return EXIT_OK


def cmd_progressions(cfg: RunConfig) -> int:
    mtable = build_mangoldt_table(cfg.limit)
    gtable = gb.goldbach_convolution(cfg.limit, mtable, workers=cfg.threads)
    x = cfg.limit
    rows = []
    for q in cfg.moduli:
        report = pr.progression_report(x, q, mtable, gtable)
        pr.write_progression_csv(report, _out(cfg, f"progressions_q{q}.csv"))
        for C in cfg.C:
            flagged, bound = pr.exceptional_residues(x, q, C, report.exceptional)
            rows.append([q, C, len(flagged), gb.fmt(bound)])
    with open(_out(cfg, "exceptional_residues.csv"), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["q", "C", "flagged", "reference_size"])
        writer.writerows(rows)

    mont = pr.montgomery_suite(cfg.seed)
    t1 = pr.t1_suite(cfg.seed)
    pr.write_checks_csv(mont, _out(cfg, "montgomery_checks.csv"))
    pr.write_checks_csv(t1, _out(cfg, "t1_checks.csv"))
    print(f"montgomery: {sum(c.passed for c in mont)}/{len(mont)} pass")
    print(f"t1: {sum(c.passed for c in t1)}/{len(t1)} pass")
    return EXIT_OK


def cmd_verify_all(cfg: RunConfig) -> int:
    status = EXIT_OK
    for name, fn in (("sieve", cmd_sieve), ("goldbach", cmd_goldbach),
                     ("fujii", cmd_fujii), ("progressions", cmd_progressions)):
        print(f"== {name}")
        status = max(status, fn(cfg))
    return status


COMMANDS = {
    "sieve": cmd_sieve,
    "goldbach": cmd_goldbach,
    "fujii": cmd_fujii,
    "progressions": cmd_progressions,
    "verify-all": cmd_verify_all,
}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"key=value config file (default: ./{DEFAULT_CONFIG} if present)")
    common.add_argument("--limit", type=lambda s: int(float(s)), help="table size N")
    common.add_argument("--checkpoints", type=_int_list, help="ascending x values, comma separated")
    common.add_argument("--zeros", help="zeta zeros file (default: bundled first 100)")
    common.add_argument("--K", type=_int_list, help="zero counts, comma separated")
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help=f"output directory (env {OUT_ENV} takes precedence)")
    common.add_argument("--moduli", type=_int_list)
    common.add_argument("--C", type=_float_list, help="exceptional-residue exponents")
    common.add_argument("--threads", type=int, help="FFT worker threads")
    common.add_argument("--method", choices=["direct", "convolution", "verify"])
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="goldbach-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg)
    except IngestionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except GoldbachLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_status
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
