"""Grid sweep of f_n and g_n: monotonicity, lower bound, ceiling and Turán bound.

Writes one CSV row per (n, x) with the enclosure of f_n(x), and prints a
per-n summary.  Example:

    python scripts/reproduce_monotonicity.py --n-max 20 --x-max 200 --out results
"""

from __future__ import annotations

import argparse
import csv
import time
from dataclasses import dataclass
from pathlib import Path

from hyperratio import Precision, Target, default_grid, grid_monotone_check, turan_check
from hyperratio.turan_suite import format_number, format_rational


@dataclass(frozen=True)
class SweepConfig:
    n_max: int = 20
    x_max: int = 200
    points: int = 129
    bits: int = 128
    out: Path = Path("results")


def run(cfg: SweepConfig) -> bool:
    cfg.out.mkdir(parents=True, exist_ok=True)
    grid = default_grid(cfg.x_max, cfg.points)
    prec = Precision(cfg.bits)
    path = cfg.out / "f_grid.csv"
    all_ok = True
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "x", "f", "error_radius"])
        for n in range(1, cfg.n_max + 1):
            t0 = time.perf_counter()
            f = grid_monotone_check(Target.f(n), grid, prec)
            g = turan_check(Target.g(n), grid, prec)
            for x, v in zip(f.grid, f.values):
                writer.writerow([n, format_rational(x), format_number(v.value), format_number(v.error_radius, 6)])
            ok = f.verdict == "verified" and g.turan_holds
            all_ok &= ok
            print(f"n={n:3d}  f: {f.verdict:12s} ceiling<1 {f.ceiling_holds!s:5s} "
                  f"margin {format_number(f.worst_margin, 6):>12s}  g>=1 {g.turan_holds!s:5s} "
                  f"escalations {f.escalations + g.escalations}  {time.perf_counter() - t0:.2f}s")
    print(f"wrote {path}")
    return all_ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=SweepConfig.n_max)
    ap.add_argument("--x-max", type=int, default=SweepConfig.x_max)
    ap.add_argument("--points", type=int, default=SweepConfig.points)
    ap.add_argument("--bits", type=int, default=SweepConfig.bits)
    ap.add_argument("--out", type=Path, default=SweepConfig.out)
    args = ap.parse_args()
    ok = run(SweepConfig(args.n_max, args.x_max, args.points, args.bits, args.out))
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
