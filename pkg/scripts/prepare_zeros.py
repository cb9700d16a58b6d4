#!/usr/bin/env python3
"""Regenerate the bundled table of zeta zero ordinates.

Uses mpmath.zetazero, which locates each zero on the critical line by
Gram-point bracketing and refines it at the requested working precision.
The output is the file read by ``goldbach_lab.explicit_formula.load_zeros``.

    python scripts/prepare_zeros.py --count 100 --digits 12
"""
import argparse
import sys
from pathlib import Path

import mpmath

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "goldbach_lab" / "data" / "zeta_zeros_100.txt"


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--digits", type=int, default=12)
    parser.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = parser.parse_args(argv)

    mpmath.mp.dps = args.digits + 10
    lines = [
        f"# imaginary parts of the first {args.count} nontrivial zeros of zeta(s)",
        f"# generated by scripts/prepare_zeros.py with mpmath {mpmath.__version__}"
        f" (mpmath.zetazero, {mpmath.mp.dps} working digits)",
    ]
    for k in range(1, args.count + 1):
        gamma = mpmath.zetazero(k).imag
        lines.append(mpmath.nstr(gamma, args.digits + 2, strip_zeros=False))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {args.count} zeros to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
