"""Certified decrease of h(a, b, c, x) for 0 < a < 1.

With a = 1/2, b = 3, c = 1 the scalar hypotheses 0 < a < b - c and b > 1
hold, yet h rises above its limit Gamma(b-c)Gamma(b+c)/Gamma(b)^2 = 3/2 and
then falls back.  The script prints separated enclosures around the peak
and the first index where the coefficient ratio C_n drops.

    python scripts/small_a_counterexample.py --a 1/2 --b 3 --c 1
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from hyperratio import AbcParams, Target, certify_coeff_monotone, check_theorem1_conditions, grid_monotone_check
from hyperratio.turan_suite import format_number, format_rational


@dataclass(frozen=True)
class CounterexampleConfig:
    a: Fraction = Fraction(1, 2)
    b: Fraction = Fraction(3)
    c: Fraction = Fraction(1)
    depth: int = 64


def run(cfg: CounterexampleConfig) -> bool:
    params = AbcParams(cfg.a, cfg.b, cfg.c)
    print(check_theorem1_conditions(params).format())
    limit = mpmath.gamma(cfg.b - cfg.c) * mpmath.gamma(cfg.b + cfg.c) / mpmath.gamma(cfg.b) ** 2
    print(f"limit as x -> oo: {mpmath.nstr(limit, 15)}")
    grid = [Fraction(k) for k in (0, 1, 2, 4, 6, 8, 9, 10, 12, 16, 20, 40, 80, 160)]
    report = grid_monotone_check(Target.h(cfg.a, cfg.b, cfg.c), grid)
    for x, v in zip(report.grid, report.values):
        print(f"  x = {format_rational(x):>4s}  h = {format_number(v.value, 20)}  +- {format_number(v.error_radius, 3)}")
    for u, w in report.decreases:
        print(f"  certified decrease between x = {format_rational(u)} and x = {format_rational(w)}")
    cert = certify_coeff_monotone((cfg.a,), (cfg.b,), (cfg.c,), cfg.depth)
    print(f"w_(n,k) nondecreasing in k for all n <= {cfg.depth}: {cert.supporting[0].holds}")
    if cert.first_violation is not None:
        v = cert.first_violation
        print(f"C_n first drops at n = {v.index}: {float(v.lhs):.12f} < {float(v.rhs):.12f}")
    else:
        print(f"C_n nondecreasing up to n = {cfg.depth}")
    return bool(report.decreases)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=Fraction, default=CounterexampleConfig.a)
    ap.add_argument("--b", type=Fraction, default=CounterexampleConfig.b)
    ap.add_argument("--c", type=Fraction, default=CounterexampleConfig.c)
    ap.add_argument("--depth", type=int, default=CounterexampleConfig.depth)
    args = ap.parse_args()
    found = run(CounterexampleConfig(args.a, args.b, args.c, args.depth))
    raise SystemExit(1 if found else 0)


if __name__ == "__main__":
    main()
