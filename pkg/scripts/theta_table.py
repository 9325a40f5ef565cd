"""Table of Ramanujan's theta(n) and the rational e^n bracket.

    python scripts/theta_table.py --n-max 500 --out results
"""

from __future__ import annotations

import argparse
import csv
from dataclasses import dataclass
from pathlib import Path

from hyperratio import Precision, e_power_bounds, ramanujan_theta
from hyperratio.turan_suite import format_number


@dataclass(frozen=True)
class ThetaConfig:
    n_max: int = 500
    bits: int = 128
    out: Path = Path("results")


def run(cfg: ThetaConfig) -> bool:
    cfg.out.mkdir(parents=True, exist_ok=True)
    prec = Precision(cfg.bits)
    path = cfg.out / "theta.csv"
    previous, ok, monotone = None, True, True
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "theta", "error_radius", "in_bounds", "e_power_bracket_verified"])
        for n in range(1, cfg.n_max + 1):
            t = ramanujan_theta(n, prec)
            e = e_power_bounds(n, prec)
            ok &= t.in_bounds and e.verified
            if previous is not None:
                monotone &= t.upper < previous.lower
            previous = t
            writer.writerow([n, format_number(t.theta, 25), format_number(t.error_radius, 6),
                             t.in_bounds, e.verified])
    print(f"theta(n) in (1/3, 1/2) and e^n bracketed for n = 1..{cfg.n_max}: {ok}")
    print(f"theta(n) certified strictly decreasing: {monotone}")
    print(f"theta({cfg.n_max}) = {format_number(previous.theta, 20)}")
    print(f"wrote {path}")
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=ThetaConfig.n_max)
    ap.add_argument("--bits", type=int, default=ThetaConfig.bits)
    ap.add_argument("--out", type=Path, default=ThetaConfig.out)
    args = ap.parse_args()
    raise SystemExit(0 if run(ThetaConfig(args.n_max, args.bits, args.out)) else 1)


if __name__ == "__main__":
    main()
